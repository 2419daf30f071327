#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace splice {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class CellKind : std::uint8_t { Exterior, Interior, Boundary };

const char* to_string(CellKind kind);

/// Analytic description of a disk domain, kept when the grid was built
/// from one so that disk-specific quantities need not be re-estimated.
struct DiskGeometry {
  Point center;
  double radius;
};

/// Uniform Cartesian grid with a cell mask. Interior cells carry unknowns,
/// Boundary cells carry Dirichlet data phi >= 0 at their centres, Exterior
/// cells are ignored. Cell (i, j) has its centre at origin + (i h, j h).
///
/// Construction checks that every Interior cell has four Interior/Boundary
/// neighbours inside the array, that the Interior set is nonempty and
/// 4-connected, and that boundary data is finite and nonnegative.
class Grid2D {
 public:
  Grid2D(int nx, int ny, double h, Point origin, std::vector<CellKind> kinds,
         std::vector<double> boundary_values,
         std::optional<DiskGeometry> disk = std::nullopt);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double h() const noexcept { return h_; }
  Point origin() const noexcept { return origin_; }
  std::size_t size() const noexcept { return kinds_.size(); }

  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i);
  }
  int col(std::size_t k) const noexcept { return static_cast<int>(k % nx_); }
  int row(std::size_t k) const noexcept { return static_cast<int>(k / nx_); }

  CellKind kind(std::size_t k) const noexcept { return kinds_[k]; }
  bool is_interior(std::size_t k) const noexcept {
    return kinds_[k] == CellKind::Interior;
  }
  /// Interior or Boundary: the cells on which a field has a value.
  bool is_defined(std::size_t k) const noexcept {
    return kinds_[k] != CellKind::Exterior;
  }

  Point center(std::size_t k) const noexcept {
    return {origin_.x + h_ * col(k), origin_.y + h_ * row(k)};
  }

  /// Dirichlet value of a Boundary cell; 0 for other cells.
  double boundary_value(std::size_t k) const noexcept { return bvalues_[k]; }
  double max_boundary_value() const noexcept { return max_bvalue_; }

  const std::vector<std::size_t>& interior_cells() const noexcept {
    return interior_;
  }
  const std::vector<std::size_t>& boundary_cells() const noexcept {
    return boundary_;
  }

  const std::optional<DiskGeometry>& disk() const noexcept { return disk_; }

  /// The four lattice neighbours of an Interior cell (E, W, N, S).
  std::array<std::size_t, 4> neighbors(std::size_t k) const noexcept {
    const std::size_t s = static_cast<std::size_t>(nx_);
    return {k + 1, k - 1, k + s, k - s};
  }

  /// Index of the cell whose centre is nearest to p, if p is on the array.
  std::optional<std::size_t> locate(Point p) const noexcept;

 private:
  int nx_;
  int ny_;
  double h_;
  Point origin_;
  std::vector<CellKind> kinds_;
  std::vector<double> bvalues_;
  std::vector<std::size_t> interior_;
  std::vector<std::size_t> boundary_;
  double max_bvalue_ = 0.0;
  std::optional<DiskGeometry> disk_;
};

using GridPtr = std::shared_ptr<const Grid2D>;

/// Values on the Interior and Boundary cells of a grid. Exterior entries
/// are held at zero and carry no meaning.
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid);
  ScalarField(GridPtr grid, std::vector<double> values);

  /// Zero on Interior cells, the grid's boundary data on Boundary cells.
  static ScalarField with_boundary_data(GridPtr grid);
  /// Samples f at the centres of all Interior and Boundary cells.
  static ScalarField sample(GridPtr grid, const std::function<double(Point)>& f);

  const Grid2D& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  double operator[](std::size_t k) const noexcept { return values_[k]; }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  /// Max |a - b| over Interior cells.
  friend double max_abs_diff(const ScalarField& a, const ScalarField& b);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// A set of Interior cells.
class RegionMask {
 public:
  explicit RegionMask(GridPtr grid);

  /// Interior cells whose centre satisfies the predicate.
  static RegionMask where(GridPtr grid, const std::function<bool(Point)>& pred);
  static RegionMask all_interior(GridPtr grid);

  const Grid2D& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  bool contains(std::size_t k) const noexcept { return bits_[k] != 0; }
  /// Throws PreconditionError for non-Interior cells.
  void insert(std::size_t k);
  void erase(std::size_t k) noexcept { bits_[k] = 0; }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  double area() const noexcept;
  std::vector<std::size_t> cells() const;

  bool is_subset_of(const RegionMask& other) const noexcept;
  bool intersects(const RegionMask& other) const noexcept;
  RegionMask united(const RegionMask& other) const;

  /// Cells of the region that have a 4-neighbour outside it.
  std::vector<std::size_t> edge_cells() const;

  /// Indicator field: `value` on member cells, zero elsewhere.
  ScalarField indicator(double value = 1.0) const;

  friend bool operator==(const RegionMask& a, const RegionMask& b) noexcept {
    return a.bits_ == b.bits_;
  }

 private:
  GridPtr grid_;
  std::vector<std::uint8_t> bits_;
};

/// Disk of radius R centred at the origin, n cells across the diameter
/// (h = 2R/n, n >= 16). Cells with centre distance < R are Interior; the
/// remaining cells next to an Interior cell form the staircase boundary and
/// carry the value C.
GridPtr build_disk_grid(double R, double C, int n);

/// Rectangle [0, w] x [0, hgt] with n cells across the width. The outer
/// ring of cells has its centres on the rectangle's edges and carries
/// phi sampled there; everything inside is Interior. hgt must be a whole
/// number of cells.
GridPtr build_rect_grid(double w, double hgt, int n,
                        const std::function<double(Point)>& phi);

enum class SignMode { Negative, Positive };

/// Interior cells with value strictly below (Negative) or above (Positive)
/// zero. Cells holding exactly zero belong to neither.
RegionMask region_from_sign(const ScalarField& f, SignMode mode);

/// Radius of the disk with the same area as the region.
double region_radius_estimate(const RegionMask& m);

struct Circle {
  Point center;
  double radius;
};

/// Largest circle centred at an Interior cell that avoids every Boundary
/// cell centre (brute-force distance transform), or the analytic disk when
/// the grid carries one.
Circle inscribed_circle(const Grid2D& g);

/// Largest distance from the inscribed centre to a Boundary cell centre,
/// or the analytic radius for a disk grid.
double circumradius(const Grid2D& g);

/// CSV rows `i,j,x,y,kind,value` for every Interior and Boundary cell.
/// Without a field the value column holds the boundary data.
void write_csv(std::ostream& os, const Grid2D& g);
void write_csv(std::ostream& os, const ScalarField& f);

}  // namespace splice
