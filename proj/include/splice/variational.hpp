#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "splice/disk_analytic.hpp"
#include "splice/elliptic.hpp"
#include "splice/grid.hpp"

namespace splice {

/// Goldshtik's functional split as I(B) = q + 2 omega A(B) - omega^2 Q(B).
struct FunctionalBreakdown {
  /// Dirichlet energy of the harmonic extension.
  double q = 0.0;
  /// Sum over B of psi0 h^2.
  double A = 0.0;
  /// Sum over B of v h^2 with -Delta_h v = chi(B), v = 0 on the boundary:
  /// the discrete (1 / 2pi) double Green integral over B x B.
  double Q = 0.0;
  double I = 0.0;
};

/// Sum of (u_a - u_b)^2 over lattice edges with at least one Interior end.
/// For the harmonic extension this is the discrete boundary-flux energy.
double dirichlet_energy(const ScalarField& u);

/// Evaluates the functional on one grid, caching the harmonic extension
/// and its energy across calls. Each call owns its Poisson workspace, so
/// one evaluator can serve several threads.
class FunctionalEvaluator {
 public:
  explicit FunctionalEvaluator(GridPtr grid, double tol = kDefaultPoissonTol);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const ScalarField& psi0() const noexcept { return psi0_; }
  double q() const noexcept { return q_; }

  FunctionalBreakdown evaluate(const RegionMask& B, double omega) const;

  /// I(B u delta) - I(B) through the increment formula
  ///   2 omega sum_delta psi_B h^2 - omega^2 sum_delta w h^2,
  /// with psi_B the stream function of region B and -Delta_h w = chi(delta).
  /// Throws PreconditionError when delta meets B.
  double increment(const RegionMask& B, const RegionMask& delta,
                   double omega) const;

  /// psi0 - omega v_B: the stream function generated by vorticity on B.
  ScalarField stream_function(const RegionMask& B, double omega) const;

 private:
  /// Solution of -Delta_h v = chi(B) with zero boundary values.
  ScalarField unit_potential(const RegionMask& B) const;

  GridPtr grid_;
  double tol_;
  PoissonSolver solver_;
  ScalarField psi0_;
  double q_;
};

FunctionalBreakdown functional_eval(const GridPtr& g, const RegionMask& B,
                                    double omega);

double functional_increment(const GridPtr& g, const RegionMask& B,
                            const RegionMask& delta, double omega);

enum class Family { ConcentricDisks, BoundaryRings };

struct ScanPoint {
  double a;
  FunctionalBreakdown value;
  /// Closed-form value of the family's curve at a.
  double analytic;
};

struct ScanOptions {
  /// Cells across the diameter of the disk grid.
  int n = 128;
  /// Scan range; [0, R] when unset.
  std::optional<double> a_min;
  std::optional<double> a_max;
  /// Worker threads; the result does not depend on it.
  unsigned jobs = 1;
  double tol = kDefaultPoissonTol;
};

/// I(a) on the discretised family: concentric disks {r < a} or rings
/// {a < r} attached to the boundary, for `samples` equispaced values of a
/// (samples >= 16), with the disk curve or the ring curve alongside.
std::vector<ScanPoint> scan_disk_family(const DiskProblem& p, Family family,
                                        std::size_t samples,
                                        const ScanOptions& opts = {});

struct Extremum {
  double a;
  double value;
};

struct CurveExtrema {
  std::optional<Extremum> max;
  std::optional<Extremum> min;
};

/// Interior maximum of the curve and, for the disk family, the smallest
/// value to the right of it (end points excluded).
CurveExtrema locate_extrema(const std::vector<ScanPoint>& curve, Family family);

struct BoundL {
  double L;
  /// Largest boundary value.
  double C;
  /// Inscribed radius.
  double R;
  /// Radius of the disk where the comparison function is nonpositive,
  /// sqrt(R^2 - 4C/omega); zero when omega <= L.
  std::function<double(double)> R1;
};

/// Sufficient threshold 4C/R^2 for a still region in the Coriolis problem.
/// Throws GeometryError for a vanishing inscribed radius.
BoundL bound_L(const Grid2D& g);

struct BoundL1 {
  /// A (1 + sqrt(1 + Q q / A^2)) / Q with B = all Interior cells.
  double exact;
  /// Geometric estimate with the inscribed radius R and circumradius R1.
  double estimate;
  double R;
  double R1;
  FunctionalBreakdown full;
  /// I(all Interior cells) at the probe vorticity.
  double I_probe;
};

/// Threshold above which I(D) < 0. Throws GeometryError when Q(D) = 0.
BoundL1 bound_L1(const GridPtr& g, double omega_probe,
                 double tol = kDefaultPoissonTol);

}  // namespace splice
