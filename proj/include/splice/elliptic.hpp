#pragma once

#include <cstddef>
#include <vector>

#include "splice/grid.hpp"

namespace splice {

/// Default max-norm residual target, in field units per length squared.
inline constexpr double kDefaultPoissonTol = 1e-10;

struct SolveOptions {
  double tol = kDefaultPoissonTol;
  /// Use u = 0 on Boundary cells instead of the grid's data.
  bool zero_boundary = false;
};

struct SolveStats {
  std::size_t sweeps = 0;
  double residual = 0.0;
  double relaxation = 0.0;
};

/// Red-black SOR for the 5-point Dirichlet problem on a masked grid,
///
///   (u_E + u_W + u_N + u_S - 4 u) / h^2 - c u = f   on Interior cells,
///   u = phi (or 0)                                on Boundary cells,
///
/// with an optional nonnegative shift c. The relaxation factor is
/// 2 / (1 + sin(pi / max(nx, ny))); on divergence the solve restarts once
/// with 1.5. At most 50 nx ny sweeps are run before SolverError.
///
/// The residual target is raised to the round-off floor 256 eps max|u| / h^2
/// when that is larger, since no iteration can get below it.
class PoissonSolver {
 public:
  explicit PoissonSolver(GridPtr grid);

  const GridPtr& grid_ptr() const noexcept { return grid_; }

  ScalarField solve(const ScalarField& rhs, const SolveOptions& opts = {},
                    const ScalarField* initial = nullptr,
                    const std::vector<double>* shift = nullptr,
                    SolveStats* stats = nullptr) const;

  /// max over Interior of |Delta_h u - c u - f|.
  double residual(const ScalarField& u, const ScalarField& rhs,
                  const std::vector<double>* shift = nullptr) const;

 private:
  bool run(std::vector<double>& u, const std::vector<double>& rhs,
           const std::vector<double>* shift, double relax, double tol,
           SolveStats& stats) const;

  GridPtr grid_;
  std::vector<std::size_t> red_;
  std::vector<std::size_t> black_;
};

ScalarField solve_poisson(const GridPtr& g, const ScalarField& rhs,
                          double tol = kDefaultPoissonTol);

/// Discrete harmonic function with the grid's boundary data.
ScalarField harmonic_extension(const GridPtr& g, double tol = kDefaultPoissonTol);

/// 5-point Laplacian on Interior cells (zero elsewhere).
ScalarField laplacian(const ScalarField& u);

}  // namespace splice
