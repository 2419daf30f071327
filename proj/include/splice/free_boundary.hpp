#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "splice/disk_analytic.hpp"
#include "splice/elliptic.hpp"
#include "splice/grid.hpp"

namespace splice {

enum class Classification { Trivial, Nontrivial };

std::string_view to_string(Classification c);

/// Iteration trace of a free-boundary solve.
struct SolveReport {
  ProblemKind kind;
  std::size_t iterations = 0;
  /// Goldshtik: max |psi_n - psi_{n-1}| per step (psi_0 is the harmonic
  /// extension). Tanh: nonlinear residual after each inner step.
  std::vector<double> residual_history = {};
  /// Goldshtik: area of B_0, B_1, ... Tanh: area of the circulating region
  /// at the end of each sharpness level.
  std::vector<double> region_area_history = {};
  /// Vortex region: B for the detached problem, {psi > 0} for Coriolis.
  RegionMask final_region;
  double equivalent_radius = 0.0;
  /// Coriolis only: equivalent radius of the still region {psi <= 0}.
  double quiescent_radius = 0.0;
  bool converged = false;
  /// Every cell of the final region off the sign-defined region lies in
  /// the interface band, so the fixed point is a discrete solution.
  bool self_consistent = false;
  Classification classification = Classification::Trivial;
};

struct SolveResult {
  ScalarField field;
  SolveReport report;
};

/// Goldshtik region-growing iteration for the detached problem:
///
///   Delta_h psi_n = omega chi(B_{n-1}),  psi_n = phi on the boundary,
///   B_n = B_{n-1} united with {psi_n < 0},
///
/// stopping when B_n == B_{n-1}. Exceeding max_iter returns a report with
/// converged == false. The result is Nontrivial only for a self-consistent
/// fixed point with negative cells; a seed that keeps cells where psi > 0
/// away from the interface does not yield a discrete solution.
SolveResult goldshtik_iterate(const GridPtr& g, double omega,
                              const RegionMask& seed, std::size_t max_iter,
                              double tol = kDefaultPoissonTol);

/// Smallest concentric disk about the inscribed centre (radius k R / 32)
/// whose first iterate is negative on the whole seed edge; falls back to
/// radius R / 4 when no such disk exists.
RegionMask default_seed(const GridPtr& g, double omega,
                        double tol = kDefaultPoissonTol);

/// {4, 16, 64, 256, 1024} / C, with C the largest boundary value (1 if 0).
std::vector<double> default_sharpness_schedule(double C);

struct TanhOptions {
  /// Max-norm target for Delta_h psi - f(psi) at every sharpness level.
  double tol = 1e-8;
  double damping = 0.7;
  std::size_t max_inner = 200;
  /// Starting field; the harmonic extension when absent.
  std::optional<ScalarField> initial;
};

/// Regularised continuation for the Coriolis problem. For each sharpness n
/// of the schedule solves
///
///   Delta_h psi = (omega / 2) (1 + tanh(n psi)),   psi = phi on the boundary,
///
/// by damped Newton steps seeded with the previous level's field. The
/// damping factor halves whenever a step would raise the residual.
/// Throws SolverError naming the sharpness level when a level fails.
SolveResult tanh_continuation(const GridPtr& g, double omega,
                              std::span<const double> schedule,
                              const TanhOptions& opts = {});

struct SpliceDiagnostics {
  /// max over interface cells and axes of |u_+ - 2u + u_-| / h, the jump
  /// between the forward and backward one-sided derivatives.
  double max_gradient_jump = 0.0;
  /// max |Delta_h u - branch rhs| over Interior cells off the band.
  double max_branch_residual = 0.0;
  std::size_t interface_cells = 0;
};

/// Interface band: Interior cells with a 4-neighbour on the other side of
/// the sign split of `kind` (psi < 0 vs psi >= 0 for Detached, psi > 0 vs
/// psi <= 0 for Coriolis).
RegionMask interface_band(const ScalarField& f, ProblemKind kind);

SpliceDiagnostics verify_splice(const ScalarField& f, double omega,
                                ProblemKind kind);

}  // namespace splice
