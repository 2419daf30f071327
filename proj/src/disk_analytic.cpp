#include "splice/disk_analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "splice/errors.hpp"

namespace splice {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// Relative width of the double-root window around 4Ce/R^2.
constexpr double kThresholdTol = 1e-9;
// Brackets for the detached roots stay this far (relative to R) from 0 and R.
constexpr double kBracketEps = 1e-9;

void check_radius(const DiskProblem& p, double a, const char* what) {
  if (!(a >= 0.0 && a <= p.R)) {
    throw DomainError(std::string(what) + " = " + std::to_string(a) +
                      " outside [0, R]");
  }
}

// a^2 ln(a/R), continuous at a = 0.
double a2_log(double a, double R) {
  return a == 0.0 ? 0.0 : a * a * std::log(a / R);
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::Detached ? "detached" : "coriolis";
}

ProblemKind problem_kind_from_string(std::string_view name) {
  if (name == "detached") return ProblemKind::Detached;
  if (name == "coriolis") return ProblemKind::Coriolis;
  throw ConfigError("unknown problem kind '" + std::string(name) +
                    "' (expected detached or coriolis)");
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::Inner:
      return "inner";
    case Branch::Outer:
      return "outer";
    case Branch::Unique:
      break;
  }
  return "unique";
}

DiskProblem::DiskProblem(double R_, double C_, double omega_, ProblemKind kind_)
    : R(R_), C(C_), omega(omega_), kind(kind_) {
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("R must be positive");
  if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError("C must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ConfigError("omega must be positive");
  }
}

double y_eval(const DiskProblem& p, double a) {
  check_radius(p, a, "a");
  return 0.5 * p.omega * a2_log(a, p.R) + p.C;
}

double y1_eval(const DiskProblem& p, double a) {
  check_radius(p, a, "a");
  return 0.25 * p.omega * (a * a - p.R * p.R) - 0.5 * p.omega * a2_log(a, p.R) +
         p.C;
}

double stationary_point(const DiskProblem& p) { return p.R * std::exp(-0.5); }

Thresholds thresholds(const DiskProblem& p) {
  const double r2 = p.R * p.R;
  if (p.kind == ProblemKind::Detached) {
    return {4.0 * p.C * kE / r2, 16.0 * p.C / r2};
  }
  return {4.0 * p.C / r2, std::nullopt};
}

std::vector<RadialSolution> solve_roots_detached(const DiskProblem& p) {
  const double t = 4.0 * p.C * kE / (p.R * p.R);
  const double a_star = stationary_point(p);
  if (std::abs(p.omega - t) <= kThresholdTol * t) {
    return {RadialSolution{p, a_star, Branch::Unique}};
  }
  if (p.omega < t) return {};

  const auto y = [&p](double a) { return y_eval(p, a); };
  const double lo = kBracketEps * p.R;
  const double hi = p.R * (1.0 - kBracketEps);
  const double a1 = bisect(y, lo, a_star);
  const double a2 = bisect(y, a_star, hi);
  return {RadialSolution{p, a1, Branch::Inner},
          RadialSolution{p, a2, Branch::Outer}};
}

std::optional<RadialSolution> solve_root_coriolis(const DiskProblem& p) {
  if (!(y1_eval(p, 0.0) < 0.0)) return std::nullopt;
  const auto y1 = [&p](double a) { return y1_eval(p, a); };
  return RadialSolution{p, bisect(y1, 0.0, p.R), Branch::Unique};
}

double psi_vortex_disk(const DiskProblem& p, double a, double r) {
  check_radius(p, a, "a");
  check_radius(p, r, "r");
  const double w = p.omega;
  if (r <= a) {
    return 0.25 * w * (r * r - a * a) + 0.5 * w * a2_log(a, p.R) + p.C;
  }
  return 0.5 * w * a * a * std::log(r / p.R) + p.C;
}

double psi_vortex_ring(const DiskProblem& p, double a, double r) {
  check_radius(p, a, "a");
  check_radius(p, r, "r");
  const double w = p.omega;
  const double R2 = p.R * p.R;
  if (r <= a) {
    return 0.25 * w * (a * a - R2) - 0.5 * w * a2_log(a, p.R) + p.C;
  }
  const double log_term = r == 0.0 ? 0.0 : a * a * std::log(r / p.R);
  return 0.25 * w * (r * r - R2) - 0.5 * w * log_term + p.C;
}

double psi_profile_detached(const RadialSolution& s, double r) {
  return psi_vortex_disk(s.problem, s.a, r);
}

double psi_profile_coriolis(const RadialSolution& s, double r) {
  return psi_vortex_ring(s.problem, s.a, r);
}

double functional_curve_detached(const DiskProblem& p, double a) {
  check_radius(p, a, "a");
  const double w = p.omega;
  const double a2 = a * a;
  return 2.0 * kPi * w *
         (0.25 * w * a2 * a2_log(a, p.R) - w * a2 * a2 / 16.0 + p.C * a2);
}

double functional_curve_coriolis(const DiskProblem& p, double a) {
  check_radius(p, a, "a");
  const double w = p.omega;
  const double a2 = a * a;
  const double R2 = p.R * p.R;
  return 2.0 * kPi * w *
         (p.C * (R2 - a2) + 0.25 * w * a2 * a2_log(a, p.R) + 0.25 * w * R2 * a2 -
          w * R2 * R2 / 16.0 - 3.0 * w * a2 * a2 / 16.0);
}

}  // namespace splice
