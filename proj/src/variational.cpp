#include "splice/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "splice/errors.hpp"

namespace splice {

double dirichlet_energy(const ScalarField& u) {
  const Grid2D& g = u.grid();
  double e = 0.0;
  for (std::size_t k : g.interior_cells()) {
    const auto nb = g.neighbors(k);  // E, W, N, S
    for (int d = 0; d < 4; ++d) {
      // Interior-interior edges are counted from their lower-left end only.
      const bool forward = d == 0 || d == 2;
      if (!forward && g.is_interior(nb[d])) continue;
      const double diff = u[k] - u[nb[d]];
      e += diff * diff;
    }
  }
  return e;
}

FunctionalEvaluator::FunctionalEvaluator(GridPtr grid, double tol)
    : grid_(std::move(grid)),
      tol_(tol),
      solver_(grid_),
      psi0_([&] {
        SolveOptions o;
        o.tol = tol;
        return solver_.solve(ScalarField(grid_), o);
      }()),
      q_(dirichlet_energy(psi0_)) {}

ScalarField FunctionalEvaluator::unit_potential(const RegionMask& B) const {
  SolveOptions o;
  o.tol = tol_;
  o.zero_boundary = true;
  return solver_.solve(B.indicator(-1.0), o);
}

ScalarField FunctionalEvaluator::stream_function(const RegionMask& B,
                                                 double omega) const {
  ScalarField psi = psi0_;
  if (B.empty()) return psi;
  const ScalarField v = unit_potential(B);
  for (std::size_t k : grid_->interior_cells()) psi[k] -= omega * v[k];
  return psi;
}

FunctionalBreakdown FunctionalEvaluator::evaluate(const RegionMask& B,
                                                  double omega) const {
  if (&B.grid() != grid_.get()) throw PreconditionError("region lives on a different grid");
  FunctionalBreakdown out;
  out.q = q_;
  if (!B.empty()) {
    const double h2 = grid_->h() * grid_->h();
    const ScalarField v = unit_potential(B);
    for (std::size_t k : B.cells()) {
      out.A += psi0_[k] * h2;
      out.Q += v[k] * h2;
    }
  }
  out.I = out.q + 2.0 * omega * out.A - omega * omega * out.Q;
  return out;
}

double FunctionalEvaluator::increment(const RegionMask& B,
                                      const RegionMask& delta,
                                      double omega) const {
  if (&B.grid() != grid_.get() || &delta.grid() != grid_.get()) {
    throw PreconditionError("regions live on a different grid");
  }
  if (B.intersects(delta)) throw PreconditionError("increment overlaps the region");
  if (delta.empty()) return 0.0;
  const double h2 = grid_->h() * grid_->h();
  const ScalarField psi = stream_function(B, omega);
  const ScalarField w = unit_potential(delta);
  double linear = 0.0;
  double self = 0.0;
  for (std::size_t k : delta.cells()) {
    linear += psi[k] * h2;
    self += w[k] * h2;
  }
  return 2.0 * omega * linear - omega * omega * self;
}

FunctionalBreakdown functional_eval(const GridPtr& g, const RegionMask& B,
                                    double omega) {
  return FunctionalEvaluator(g).evaluate(B, omega);
}

double functional_increment(const GridPtr& g, const RegionMask& B,
                            const RegionMask& delta, double omega) {
  return FunctionalEvaluator(g).increment(B, delta, omega);
}

std::vector<ScanPoint> scan_disk_family(const DiskProblem& p, Family family,
                                        std::size_t samples,
                                        const ScanOptions& opts) {
  if (samples < 16) throw ConfigError("a family scan needs at least 16 samples");
  const double lo = opts.a_min.value_or(0.0);
  const double hi = opts.a_max.value_or(p.R);
  if (!(lo >= 0.0 && hi <= p.R && lo < hi)) {
    throw ConfigError("scan range must satisfy 0 <= a_min < a_max <= R");
  }

  const GridPtr g = build_disk_grid(p.R, p.C, opts.n);
  const FunctionalEvaluator eval(g, opts.tol);
  const DiskProblem detached(p.R, p.C, p.omega, ProblemKind::Detached);
  const DiskProblem coriolis(p.R, p.C, p.omega, ProblemKind::Coriolis);

  std::vector<ScanPoint> curve(samples);
  auto work = [&](std::size_t i) {
    const double a = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(samples - 1);
    const RegionMask B =
        family == Family::ConcentricDisks
            ? RegionMask::where(g, [a](Point c) { return std::hypot(c.x, c.y) < a; })
            : RegionMask::where(g, [a](Point c) { return std::hypot(c.x, c.y) > a; });
    const double analytic = family == Family::ConcentricDisks
                                ? functional_curve_detached(detached, a)
                                : functional_curve_coriolis(coriolis, a);
    curve[i] = {a, eval.evaluate(B, p.omega), analytic};
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, samples));
  if (jobs == 1) {
    for (std::size_t i = 0; i < samples; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < samples; i += jobs) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return curve;
}

CurveExtrema locate_extrema(const std::vector<ScanPoint>& curve, Family family) {
  CurveExtrema out;
  if (curve.size() < 3) return out;
  const std::size_t last = curve.size() - 1;
  std::size_t imax = 1;
  for (std::size_t i = 2; i < last; ++i) {
    if (curve[i].value.I > curve[imax].value.I) imax = i;
  }
  out.max = Extremum{curve[imax].a, curve[imax].value.I};
  if (family == Family::ConcentricDisks && imax + 1 < last) {
    std::size_t imin = imax + 1;
    for (std::size_t i = imax + 2; i < last; ++i) {
      if (curve[i].value.I < curve[imin].value.I) imin = i;
    }
    out.min = Extremum{curve[imin].a, curve[imin].value.I};
  }
  return out;
}

BoundL bound_L(const Grid2D& g) {
  const Circle c = inscribed_circle(g);
  if (!(c.radius > 0.0)) throw GeometryError("domain has no inscribed circle");
  const double C = g.max_boundary_value();
  const double R = c.radius;
  const double L = 4.0 * C / (R * R);
  return {L, C, R, [L, C, R](double omega) {
            return omega > L ? std::sqrt(R * R - 4.0 * C / omega) : 0.0;
          }};
}

BoundL1 bound_L1(const GridPtr& g, double omega_probe, double tol) {
  const FunctionalEvaluator eval(g, tol);
  const FunctionalBreakdown full =
      eval.evaluate(RegionMask::all_interior(g), omega_probe);
  if (!(full.Q > 0.0)) throw GeometryError("Q vanishes on the whole domain");

  BoundL1 out;
  out.full = full;
  out.I_probe = full.I;
  const double A = full.A;
  const double Q = full.Q;
  const double q = full.q;
  out.exact = A > 0.0 ? A * (1.0 + std::sqrt(1.0 + Q * q / (A * A))) / Q
                      : std::sqrt(q / Q);

  out.R = inscribed_circle(*g).radius;
  out.R1 = circumradius(*g);
  if (!(out.R > 0.0)) throw GeometryError("domain has no inscribed circle");
  const double C = g->max_boundary_value();
  const double R4 = std::pow(out.R, 4);
  const double R1sq = out.R1 * out.R1;
  out.estimate =
      C > 0.0 ? 8.0 * R1sq * C *
                    (1.0 + std::sqrt(1.0 + q * R4 /
                                               (8.0 * std::numbers::pi * R1sq * R1sq * C * C))) /
                    R4
              : std::sqrt(8.0 * q / std::numbers::pi) / (out.R * out.R);
  return out;
}

}  // namespace splice
