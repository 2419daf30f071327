#include "splice/elliptic.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "splice/errors.hpp"

namespace splice {

namespace {

constexpr std::size_t kCheckEvery = 10;
constexpr double kFallbackRelaxation = 1.5;
constexpr double kDivergenceFactor = 1e8;
// SOR stagnates near 100 eps max|u| / h^2 in the residual.
constexpr double kRoundoffFactor = 256.0;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

PoissonSolver::PoissonSolver(GridPtr grid) : grid_(std::move(grid)) {
  for (std::size_t k : grid_->interior_cells()) {
    ((grid_->col(k) + grid_->row(k)) % 2 == 0 ? red_ : black_).push_back(k);
  }
}

double PoissonSolver::residual(const ScalarField& u, const ScalarField& rhs,
                               const std::vector<double>* shift) const {
  const Grid2D& g = *grid_;
  const double inv_h2 = 1.0 / (g.h() * g.h());
  const auto& uv = u.values();
  double m = 0.0;
  for (std::size_t k : g.interior_cells()) {
    const auto nb = g.neighbors(k);
    double r = (uv[nb[0]] + uv[nb[1]] + uv[nb[2]] + uv[nb[3]] - 4.0 * uv[k]) * inv_h2 -
               rhs[k];
    if (shift) r -= (*shift)[k] * uv[k];
    m = std::max(m, std::abs(r));
  }
  return m;
}

bool PoissonSolver::run(std::vector<double>& u, const std::vector<double>& rhs,
                        const std::vector<double>* shift, double relax,
                        double tol, SolveStats& stats) const {
  const Grid2D& g = *grid_;
  const double h2 = g.h() * g.h();
  const std::size_t s = static_cast<std::size_t>(g.nx());
  const std::size_t cap = 50 * static_cast<std::size_t>(g.nx()) *
                          static_cast<std::size_t>(g.ny());
  const double eps = std::numeric_limits<double>::epsilon();

  auto sweep = [&](const std::vector<std::size_t>& cells) {
    for (std::size_t k : cells) {
      const double sum = u[k + 1] + u[k - 1] + u[k + s] + u[k - s];
      const double diag = shift ? 4.0 + h2 * (*shift)[k] : 4.0;
      const double gs = (sum - h2 * rhs[k]) / diag;
      u[k] += relax * (gs - u[k]);
    }
  };
  auto measure = [&]() {
    double r = 0.0;
    double umax = 0.0;
    for (std::size_t k : g.interior_cells()) {
      double res = (u[k + 1] + u[k - 1] + u[k + s] + u[k - s] - 4.0 * u[k]) / h2 -
                   rhs[k];
      if (shift) res -= (*shift)[k] * u[k];
      if (!std::isfinite(res)) return std::make_pair(res, umax);
      r = std::max(r, std::abs(res));
      umax = std::max(umax, std::abs(u[k]));
    }
    return std::make_pair(r, umax);
  };

  auto [res0, umax0] = measure();
  double floor = kRoundoffFactor * eps * umax0 / h2;
  stats.residual = res0;
  if (res0 <= std::max(tol, floor)) return true;

  for (std::size_t it = 1; it <= cap; ++it) {
    sweep(red_);
    sweep(black_);
    ++stats.sweeps;
    if (it % kCheckEvery != 0) continue;
    auto [res, umax] = measure();
    stats.residual = res;
    if (!std::isfinite(res) || res > kDivergenceFactor * std::max(res0, tol)) {
      return false;
    }
    floor = kRoundoffFactor * eps * umax / h2;
    if (res <= std::max(tol, floor)) return true;
  }
  throw SolverError("SOR did not reach residual " + sci(tol) +
                        " within " + std::to_string(cap) +
                        " sweeps; final residual " + sci(stats.residual),
                    stats.residual);
}

ScalarField PoissonSolver::solve(const ScalarField& rhs, const SolveOptions& opts,
                                 const ScalarField* initial,
                                 const std::vector<double>* shift,
                                 SolveStats* stats) const {
  const Grid2D& g = *grid_;
  if (&rhs.grid() != &g) throw PreconditionError("rhs lives on a different grid");
  if (!(opts.tol > 0.0)) throw ConfigError("solver tolerance must be positive");
  if (shift) {
    if (shift->size() != g.size()) throw PreconditionError("shift size mismatch");
    for (std::size_t k : g.interior_cells()) {
      if (!((*shift)[k] >= 0.0)) throw PreconditionError("shift must be >= 0");
    }
  }

  auto start = [&]() {
    std::vector<double> u(g.size(), 0.0);
    if (initial) {
      for (std::size_t k : g.interior_cells()) u[k] = (*initial)[k];
    }
    if (!opts.zero_boundary) {
      for (std::size_t k : g.boundary_cells()) u[k] = g.boundary_value(k);
    }
    return u;
  };

  SolveStats local;
  std::vector<double> u = start();
  const double relax =
      2.0 / (1.0 + std::sin(std::numbers::pi / std::max(g.nx(), g.ny())));
  local.relaxation = relax;
  if (!run(u, rhs.values(), shift, relax, opts.tol, local)) {
    u = start();
    local.relaxation = kFallbackRelaxation;
    if (!run(u, rhs.values(), shift, kFallbackRelaxation, opts.tol, local)) {
      throw SolverError("SOR diverged with both relaxation factors; residual " +
                            sci(local.residual),
                        local.residual);
    }
  }
  if (stats) *stats = local;
  return ScalarField(grid_, std::move(u));
}

ScalarField solve_poisson(const GridPtr& g, const ScalarField& rhs, double tol) {
  SolveOptions opts;
  opts.tol = tol;
  return PoissonSolver(g).solve(rhs, opts);
}

ScalarField harmonic_extension(const GridPtr& g, double tol) {
  return solve_poisson(g, ScalarField(g), tol);
}

ScalarField laplacian(const ScalarField& u) {
  const Grid2D& g = u.grid();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  ScalarField out(u.grid_ptr());
  for (std::size_t k : g.interior_cells()) {
    const auto nb = g.neighbors(k);
    out[k] = (u[nb[0]] + u[nb[1]] + u[nb[2]] + u[nb[3]] - 4.0 * u[k]) * inv_h2;
  }
  return out;
}

}  // namespace splice
