#pragma once

#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

namespace splice {

/// Which of the two dual splicing problems is meant.
///
/// Detached: vorticity omega where psi < 0, potential flow where psi > 0
/// (Lavrentyev detached-flow scheme). Coriolis: vorticity omega where
/// psi > 0, fluid at rest (psi == 0) elsewhere.
enum class ProblemKind { Detached, Coriolis };

std::string_view to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(std::string_view name);

/// Model problem on the disk of radius R centred at the origin with constant
/// boundary value C. Construction validates R > 0, C > 0, omega > 0.
struct DiskProblem {
  double R;
  double C;
  double omega;
  ProblemKind kind;

  DiskProblem(double R, double C, double omega, ProblemKind kind);
};

enum class Branch { Inner, Outer, Unique };

std::string_view to_string(Branch branch);

/// A radially symmetric solution: interface radius a with 0 < a < R.
struct RadialSolution {
  DiskProblem problem;
  double a;
  Branch branch;
};

struct Thresholds {
  /// Existence threshold for nontrivial solutions.
  double exist;
  /// Detached only: above this I(R) < 0 and the minimum at a2 is absolute.
  std::optional<double> strict;
};

// Root equations. Both accept 0 <= a <= R and throw DomainError otherwise;
// the value at a = 0 is the limit.
double y_eval(const DiskProblem& p, double a);
double y1_eval(const DiskProblem& p, double a);

/// Unique zero of y'(a) on (0, R): a* = R e^{-1/2}.
double stationary_point(const DiskProblem& p);

Thresholds thresholds(const DiskProblem& p);

/// Roots of y on (0, R), ordered a1 < a2. Empty below the existence
/// threshold, a single root at it (relative tolerance 1e-9).
std::vector<RadialSolution> solve_roots_detached(const DiskProblem& p);

/// The root of the (strictly increasing) y1 on (0, R), if omega > 4C/R^2.
std::optional<RadialSolution> solve_root_coriolis(const DiskProblem& p);

// Closed-form stream function of the splice, r in [0, R].
double psi_profile_detached(const RadialSolution& s, double r);
double psi_profile_coriolis(const RadialSolution& s, double r);

/// Detached profile with an arbitrary vortex radius a (not necessarily a
/// root): psi = C - (omega / 2pi) * integral over the disk B_a of G.
double psi_vortex_disk(const DiskProblem& p, double a, double r);

/// Coriolis profile with an arbitrary ring a <= r <= R as vortex region.
double psi_vortex_ring(const DiskProblem& p, double a, double r);

// Goldshtik functional restricted to the concentric-disk family and to the
// family of rings attached to the boundary.
double functional_curve_detached(const DiskProblem& p, double a);
double functional_curve_coriolis(const DiskProblem& p, double a);

/// Bisection on a continuous function with f(lo) and f(hi) of opposite
/// sign. Halves the bracket until the midpoint is no longer representable,
/// then returns whichever end has the smaller |f|.
template <class F>
double bisect(F&& f, double lo, double hi) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  for (int it = 0; it < 2100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

}  // namespace splice
