#include "splice/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "splice/errors.hpp"
#include "splice/serialize.hpp"

namespace splice {

const char* to_string(CellKind kind) {
  switch (kind) {
    case CellKind::Interior:
      return "interior";
    case CellKind::Boundary:
      return "boundary";
    case CellKind::Exterior:
      break;
  }
  return "exterior";
}

Grid2D::Grid2D(int nx, int ny, double h, Point origin,
               std::vector<CellKind> kinds, std::vector<double> boundary_values,
               std::optional<DiskGeometry> disk)
    : nx_(nx),
      ny_(ny),
      h_(h),
      origin_(origin),
      kinds_(std::move(kinds)),
      bvalues_(std::move(boundary_values)),
      disk_(disk) {
  if (nx < 3 || ny < 3) throw ConfigError("grid needs at least 3x3 cells");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid spacing must be positive");
  const std::size_t n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  if (kinds_.size() != n || bvalues_.size() != n) {
    throw ConfigError("cell arrays do not match grid dimensions");
  }

  for (std::size_t k = 0; k < n; ++k) {
    switch (kinds_[k]) {
      case CellKind::Interior: {
        const int i = col(k);
        const int j = row(k);
        if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) {
          throw GeometryError("interior cell on the edge of the array");
        }
        for (std::size_t nb : neighbors(k)) {
          if (kinds_[nb] == CellKind::Exterior) {
            throw GeometryError("interior cell (" + std::to_string(i) + ", " +
                                std::to_string(j) +
                                ") touches an exterior cell");
          }
        }
        interior_.push_back(k);
        bvalues_[k] = 0.0;
        break;
      }
      case CellKind::Boundary:
        if (!std::isfinite(bvalues_[k]) || bvalues_[k] < 0.0) {
          throw DataError("boundary value must be finite and >= 0, got " +
                          std::to_string(bvalues_[k]));
        }
        boundary_.push_back(k);
        max_bvalue_ = std::max(max_bvalue_, bvalues_[k]);
        break;
      case CellKind::Exterior:
        bvalues_[k] = 0.0;
        break;
    }
  }
  if (interior_.empty()) throw GeometryError("grid has no interior cells");

  // 4-connectivity of the interior set.
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::size_t> stack{interior_.front()};
  seen[interior_.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t k = stack.back();
    stack.pop_back();
    ++reached;
    for (std::size_t nb : neighbors(k)) {
      if (kinds_[nb] == CellKind::Interior && !seen[nb]) {
        seen[nb] = 1;
        stack.push_back(nb);
      }
    }
  }
  if (reached != interior_.size()) {
    throw GeometryError("interior cells are not 4-connected");
  }
}

std::optional<std::size_t> Grid2D::locate(Point p) const noexcept {
  const double fi = std::round((p.x - origin_.x) / h_);
  const double fj = std::round((p.y - origin_.y) / h_);
  if (!(fi >= 0.0 && fj >= 0.0 && fi < nx_ && fj < ny_)) return std::nullopt;
  return index(static_cast<int>(fi), static_cast<int>(fj));
}

ScalarField::ScalarField(GridPtr grid)
    : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw ConfigError("field size does not match its grid");
  }
}

ScalarField ScalarField::with_boundary_data(GridPtr grid) {
  ScalarField f(std::move(grid));
  for (std::size_t k : f.grid().boundary_cells()) f[k] = f.grid().boundary_value(k);
  return f;
}

ScalarField ScalarField::sample(GridPtr grid,
                                const std::function<double(Point)>& fn) {
  ScalarField f(std::move(grid));
  const Grid2D& g = f.grid();
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.is_defined(k)) f[k] = fn(g.center(k));
  }
  return f;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t k : a.grid().interior_cells()) {
    m = std::max(m, std::abs(a[k] - b[k]));
  }
  return m;
}

RegionMask::RegionMask(GridPtr grid)
    : grid_(std::move(grid)), bits_(grid_->size(), 0) {}

RegionMask RegionMask::where(GridPtr grid,
                             const std::function<bool(Point)>& pred) {
  RegionMask m(std::move(grid));
  for (std::size_t k : m.grid().interior_cells()) {
    if (pred(m.grid().center(k))) m.bits_[k] = 1;
  }
  return m;
}

RegionMask RegionMask::all_interior(GridPtr grid) {
  return where(std::move(grid), [](Point) { return true; });
}

void RegionMask::insert(std::size_t k) {
  if (k >= bits_.size() || !grid_->is_interior(k)) {
    throw PreconditionError("region cells must be interior cells");
  }
  bits_[k] = 1;
}

std::size_t RegionMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

double RegionMask::area() const noexcept {
  return static_cast<double>(count()) * grid_->h() * grid_->h();
}

std::vector<std::size_t> RegionMask::cells() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k]) out.push_back(k);
  }
  return out;
}

bool RegionMask::is_subset_of(const RegionMask& other) const noexcept {
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k] && !other.bits_[k]) return false;
  }
  return true;
}

bool RegionMask::intersects(const RegionMask& other) const noexcept {
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k] && other.bits_[k]) return true;
  }
  return false;
}

RegionMask RegionMask::united(const RegionMask& other) const {
  RegionMask out(*this);
  for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] |= other.bits_[k];
  return out;
}

std::vector<std::size_t> RegionMask::edge_cells() const {
  std::vector<std::size_t> out;
  for (std::size_t k : grid_->interior_cells()) {
    if (!bits_[k]) continue;
    for (std::size_t nb : grid_->neighbors(k)) {
      if (!bits_[nb]) {
        out.push_back(k);
        break;
      }
    }
  }
  return out;
}

ScalarField RegionMask::indicator(double value) const {
  ScalarField f(grid_);
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k]) f[k] = value;
  }
  return f;
}

GridPtr build_disk_grid(double R, double C, int n) {
  if (n < 16) throw ConfigError("disk grid needs n >= 16 cells per diameter");
  if (!(R > 0.0)) throw ConfigError("disk radius must be positive");
  if (!(C >= 0.0)) throw DataError("boundary value C must be >= 0");

  const double h = 2.0 * R / n;
  const int m = n + 2;
  const Point origin{-R - 0.5 * h, -R - 0.5 * h};
  const std::size_t size = static_cast<std::size_t>(m) * m;
  std::vector<CellKind> kinds(size, CellKind::Exterior);
  auto at = [m](int i, int j) { return static_cast<std::size_t>(j) * m + i; };

  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double x = origin.x + h * i;
      const double y = origin.y + h * j;
      if (x * x + y * y < R * R) kinds[at(i, j)] = CellKind::Interior;
    }
  }
  std::vector<double> values(size, 0.0);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (kinds[at(i, j)] == CellKind::Interior) continue;
      const bool touches =
          (i > 0 && kinds[at(i - 1, j)] == CellKind::Interior) ||
          (i + 1 < m && kinds[at(i + 1, j)] == CellKind::Interior) ||
          (j > 0 && kinds[at(i, j - 1)] == CellKind::Interior) ||
          (j + 1 < m && kinds[at(i, j + 1)] == CellKind::Interior);
      if (touches) {
        kinds[at(i, j)] = CellKind::Boundary;
        values[at(i, j)] = C;
      }
    }
  }
  return std::make_shared<const Grid2D>(m, m, h, origin, std::move(kinds),
                                        std::move(values),
                                        DiskGeometry{{0.0, 0.0}, R});
}

GridPtr build_rect_grid(double w, double hgt, int n,
                        const std::function<double(Point)>& phi) {
  if (n < 4) throw ConfigError("rectangle grid needs n >= 4 cells across");
  if (!(w > 0.0) || !(hgt > 0.0)) throw ConfigError("rectangle sides must be positive");
  const double h = w / n;
  const double rows = std::round(hgt / h);
  if (rows < 2.0 || std::abs(rows * h - hgt) > 1e-9 * hgt) {
    throw ConfigError("rectangle height must be a whole number (>= 2) of cells");
  }
  const int nx = n + 1;
  const int ny = static_cast<int>(rows) + 1;
  const std::size_t size = static_cast<std::size_t>(nx) * ny;
  std::vector<CellKind> kinds(size, CellKind::Interior);
  std::vector<double> values(size, 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (i != 0 && j != 0 && i != nx - 1 && j != ny - 1) continue;
      const std::size_t k = static_cast<std::size_t>(j) * nx + i;
      // Snap rim coordinates onto the edges exactly.
      const Point p{i == nx - 1 ? w : h * i, j == ny - 1 ? hgt : h * j};
      const double v = phi(p);
      if (!std::isfinite(v) || v < 0.0) {
        throw DataError("boundary profile must be finite and >= 0; got " +
                        std::to_string(v) + " at (" + std::to_string(p.x) +
                        ", " + std::to_string(p.y) + ")");
      }
      kinds[k] = CellKind::Boundary;
      values[k] = v;
    }
  }
  return std::make_shared<const Grid2D>(nx, ny, h, Point{0.0, 0.0},
                                        std::move(kinds), std::move(values));
}

RegionMask region_from_sign(const ScalarField& f, SignMode mode) {
  RegionMask m(f.grid_ptr());
  for (std::size_t k : f.grid().interior_cells()) {
    const bool hit = mode == SignMode::Negative ? f[k] < 0.0 : f[k] > 0.0;
    if (hit) m.insert(k);
  }
  return m;
}

double region_radius_estimate(const RegionMask& m) {
  return std::sqrt(m.area() / std::numbers::pi);
}

Circle inscribed_circle(const Grid2D& g) {
  if (g.disk()) return {g.disk()->center, g.disk()->radius};
  Circle best{{0.0, 0.0}, 0.0};
  for (std::size_t k : g.interior_cells()) {
    const Point c = g.center(k);
    double d2 = std::numeric_limits<double>::infinity();
    for (std::size_t b : g.boundary_cells()) {
      const Point q = g.center(b);
      d2 = std::min(d2, (c.x - q.x) * (c.x - q.x) + (c.y - q.y) * (c.y - q.y));
    }
    if (d2 > best.radius * best.radius) best = {c, std::sqrt(d2)};
  }
  return best;
}

double circumradius(const Grid2D& g) {
  if (g.disk()) return g.disk()->radius;
  const Point c = inscribed_circle(g).center;
  double d2 = 0.0;
  for (std::size_t b : g.boundary_cells()) {
    const Point q = g.center(b);
    d2 = std::max(d2, (c.x - q.x) * (c.x - q.x) + (c.y - q.y) * (c.y - q.y));
  }
  return std::sqrt(d2);
}

namespace {

void write_rows(std::ostream& os, const Grid2D& g,
                const std::function<double(std::size_t)>& value) {
  os << "i,j,x,y,kind,value\n";
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.is_defined(k)) continue;
    const Point p = g.center(k);
    os << g.col(k) << ',' << g.row(k) << ',' << format_number(p.x) << ','
       << format_number(p.y) << ',' << to_string(g.kind(k)) << ','
       << format_number(value(k)) << '\n';
  }
}

}  // namespace

void write_csv(std::ostream& os, const Grid2D& g) {
  write_rows(os, g, [&g](std::size_t k) { return g.boundary_value(k); });
}

void write_csv(std::ostream& os, const ScalarField& f) {
  write_rows(os, f.grid(), [&f](std::size_t k) { return f[k]; });
}

}  // namespace splice
