#include "splice/free_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "splice/errors.hpp"

namespace splice {

namespace {

bool below(double v, ProblemKind kind) {
  // Side of the split that carries vorticity for the detached problem and
  // the still fluid for the Coriolis problem.
  return kind == ProblemKind::Detached ? v < 0.0 : v <= 0.0;
}

RegionMask disk_region(const GridPtr& g, Point c, double radius) {
  return RegionMask::where(g, [c, radius](Point p) {
    return std::hypot(p.x - c.x, p.y - c.y) < radius;
  });
}

double tanh_rhs(double omega, double n, double psi) {
  return 0.5 * omega * (1.0 + std::tanh(n * psi));
}

// Delta_h psi - (omega / 2)(1 + tanh(n psi)) on Interior cells.
ScalarField tanh_residual(const ScalarField& psi, double omega, double n) {
  ScalarField r = laplacian(psi);
  for (std::size_t k : psi.grid().interior_cells()) {
    r[k] -= tanh_rhs(omega, n, psi[k]);
  }
  return r;
}

double max_norm(const ScalarField& f) {
  double m = 0.0;
  for (std::size_t k : f.grid().interior_cells()) m = std::max(m, std::abs(f[k]));
  return m;
}

}  // namespace

std::string_view to_string(Classification c) {
  return c == Classification::Trivial ? "trivial" : "nontrivial";
}

RegionMask interface_band(const ScalarField& f, ProblemKind kind) {
  const Grid2D& g = f.grid();
  RegionMask band(f.grid_ptr());
  for (std::size_t k : g.interior_cells()) {
    const bool side = below(f[k], kind);
    for (std::size_t nb : g.neighbors(k)) {
      if (below(f[nb], kind) != side) {
        band.insert(k);
        break;
      }
    }
  }
  return band;
}

SolveResult goldshtik_iterate(const GridPtr& g, double omega,
                              const RegionMask& seed, std::size_t max_iter,
                              double tol) {
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  if (&seed.grid() != g.get()) throw PreconditionError("seed lives on a different grid");
  if (max_iter == 0) throw ConfigError("max_iter must be positive");

  const PoissonSolver solver(g);
  SolveOptions opts;
  opts.tol = tol;

  ScalarField prev = solver.solve(ScalarField(g), opts);
  RegionMask region = seed;

  SolveReport report{.kind = ProblemKind::Detached, .final_region = seed};
  report.region_area_history.push_back(region.area());

  for (std::size_t n = 1; n <= max_iter; ++n) {
    ScalarField psi = solver.solve(region.indicator(omega), opts, &prev);
    report.residual_history.push_back(max_abs_diff(psi, prev));
    RegionMask next = region.united(region_from_sign(psi, SignMode::Negative));
    report.region_area_history.push_back(next.area());
    report.iterations = n;
    prev = std::move(psi);
    if (next == region) {
      report.converged = true;
      break;
    }
    region = std::move(next);
  }

  const RegionMask negative = region_from_sign(prev, SignMode::Negative);
  const RegionMask band = interface_band(prev, ProblemKind::Detached);
  bool consistent = negative.is_subset_of(region);
  for (std::size_t k : region.cells()) {
    if (!negative.contains(k) && !band.contains(k)) consistent = false;
  }
  report.final_region = region;
  report.equivalent_radius = region_radius_estimate(region);
  report.self_consistent = report.converged && consistent;
  report.classification = report.self_consistent && !negative.empty()
                              ? Classification::Nontrivial
                              : Classification::Trivial;
  return {std::move(prev), std::move(report)};
}

RegionMask default_seed(const GridPtr& g, double omega, double tol) {
  const Circle in = inscribed_circle(*g);
  const PoissonSolver solver(g);
  SolveOptions opts;
  opts.tol = tol;
  const ScalarField psi0 = solver.solve(ScalarField(g), opts);

  for (int k = 1; k < 32; ++k) {
    RegionMask seed = disk_region(g, in.center, in.radius * k / 32.0);
    if (seed.empty()) continue;
    const ScalarField psi1 = solver.solve(seed.indicator(omega), opts, &psi0);
    bool negative_outside = true;
    bool any = false;
    for (std::size_t c : seed.edge_cells()) {
      for (std::size_t nb : g->neighbors(c)) {
        if (!g->is_interior(nb) || seed.contains(nb)) continue;
        any = true;
        if (!(psi1[nb] < 0.0)) negative_outside = false;
      }
    }
    if (any && negative_outside) return seed;
  }
  return disk_region(g, in.center, 0.25 * in.radius);
}

std::vector<double> default_sharpness_schedule(double C) {
  const double scale = C > 0.0 ? 1.0 / C : 1.0;
  return {4.0 * scale, 16.0 * scale, 64.0 * scale, 256.0 * scale, 1024.0 * scale};
}

SolveResult tanh_continuation(const GridPtr& g, double omega,
                              std::span<const double> schedule,
                              const TanhOptions& opts) {
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  if (schedule.empty()) throw ConfigError("sharpness schedule is empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0.0) || (i > 0 && !(schedule[i] > schedule[i - 1]))) {
      throw ConfigError("sharpness schedule must be positive and strictly increasing");
    }
  }
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) {
    throw ConfigError("damping must lie in (0, 1]");
  }

  const PoissonSolver solver(g);
  ScalarField psi = [&] {
    if (!opts.initial) {
      SolveOptions o;
      o.tol = std::min(kDefaultPoissonTol, opts.tol);
      return solver.solve(ScalarField(g), o);
    }
    if (&opts.initial->grid() != g.get()) {
      throw PreconditionError("initial field lives on a different grid");
    }
    ScalarField f = *opts.initial;
    for (std::size_t k : g->boundary_cells()) f[k] = g->boundary_value(k);
    return f;
  }();

  SolveReport report{.kind = ProblemKind::Coriolis,
                     .final_region = RegionMask(g)};
  std::vector<double> shift(g->size(), 0.0);

  for (double n : schedule) {
    ScalarField res = tanh_residual(psi, omega, n);
    double rnorm = max_norm(res);
    double theta = opts.damping;
    std::size_t inner = 0;
    while (rnorm > opts.tol) {
      if (++inner > opts.max_inner) {
        throw SolverError("tanh continuation: no convergence at sharpness " +
                              std::to_string(n),
                          rnorm);
      }
      // Newton correction: (Delta_h - f'(psi)) delta = -residual, delta = 0
      // on the boundary.
      ScalarField rhs(g);
      for (std::size_t k : g->interior_cells()) {
        const double t = std::tanh(n * psi[k]);
        shift[k] = 0.5 * omega * n * (1.0 - t * t);
        rhs[k] = -res[k];
      }
      SolveOptions lin;
      lin.zero_boundary = true;
      lin.tol = std::max(1e-3 * rnorm, 0.1 * opts.tol);
      const ScalarField delta = solver.solve(rhs, lin, nullptr, &shift);

      for (;;) {
        ScalarField trial = psi;
        for (std::size_t k : g->interior_cells()) trial[k] += theta * delta[k];
        ScalarField trial_res = tanh_residual(trial, omega, n);
        const double tnorm = max_norm(trial_res);
        if (std::isfinite(tnorm) && tnorm < rnorm) {
          psi = std::move(trial);
          res = std::move(trial_res);
          rnorm = tnorm;
          theta = std::min(1.0, 2.0 * theta);
          break;
        }
        theta *= 0.5;
        if (theta < 1e-8) {
          throw SolverError("tanh continuation: step control failed at sharpness " +
                                std::to_string(n),
                            rnorm);
        }
      }
      report.residual_history.push_back(rnorm);
      ++report.iterations;
    }
    report.region_area_history.push_back(
        region_from_sign(psi, SignMode::Positive).area());
  }

  const RegionMask positive = region_from_sign(psi, SignMode::Positive);
  const std::size_t still = g->interior_cells().size() - positive.count();
  report.final_region = positive;
  report.equivalent_radius = region_radius_estimate(positive);
  report.quiescent_radius =
      std::sqrt(static_cast<double>(still) * g->h() * g->h() / std::numbers::pi);
  report.converged = true;
  report.self_consistent = true;
  report.classification = still == 0 ? Classification::Trivial
                                      : Classification::Nontrivial;
  return {std::move(psi), std::move(report)};
}

SpliceDiagnostics verify_splice(const ScalarField& f, double omega,
                                ProblemKind kind) {
  const Grid2D& g = f.grid();
  const RegionMask band = interface_band(f, kind);
  const ScalarField lap = laplacian(f);
  SpliceDiagnostics d;
  d.interface_cells = band.count();
  const double h = g.h();
  for (std::size_t k : g.interior_cells()) {
    if (band.contains(k)) {
      const auto nb = g.neighbors(k);
      d.max_gradient_jump =
          std::max({d.max_gradient_jump, std::abs(f[nb[0]] - 2.0 * f[k] + f[nb[1]]) / h,
                    std::abs(f[nb[2]] - 2.0 * f[k] + f[nb[3]]) / h});
      continue;
    }
    const bool vortex =
        kind == ProblemKind::Detached ? f[k] < 0.0 : f[k] > 0.0;
    d.max_branch_residual =
        std::max(d.max_branch_residual, std::abs(lap[k] - (vortex ? omega : 0.0)));
  }
  return d;
}

}  // namespace splice
