#include <doctest.h>

#include <cmath>
#include <random>

#include "splice/disk_analytic.hpp"
#include "splice/elliptic.hpp"
#include "splice/errors.hpp"
#include "splice/grid.hpp"

using namespace splice;

TEST_CASE("constant boundary data gives a constant solution") {
  const GridPtr g = build_disk_grid(1.0, 2.5, 64);
  const ScalarField u = harmonic_extension(g);
  for (std::size_t k : g->interior_cells()) CHECK(u[k] == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("quadratics are reproduced exactly on a rectangle") {
  // The 5-point Laplacian of x^2 + y^2 is exactly 4.
  const double w = 3.0;
  auto exact = [w](Point p) { return 0.25 * w * (p.x * p.x + p.y * p.y); };
  const GridPtr g = build_rect_grid(1.0, 1.0, 32, exact);
  const ScalarField rhs = RegionMask::all_interior(g).indicator(w);
  SolveStats stats;
  const ScalarField u = PoissonSolver(g).solve(rhs, {}, nullptr, nullptr, &stats);
  CHECK(max_abs_diff(u, ScalarField::sample(g, exact)) < 1e-10);
  CHECK(stats.residual <= kDefaultPoissonTol);
  CHECK(stats.sweeps > 0);
  CHECK(PoissonSolver(g).residual(u, rhs) == doctest::Approx(stats.residual).epsilon(1e-6));
}

TEST_CASE("harmonic extension obeys the maximum principle") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> wiggle(8);
  for (double& c : wiggle) c = U(rng);
  auto phi = [&](Point p) {
    double v = 1.0;
    for (int m = 0; m < 8; ++m) v += 0.1 * wiggle[m] * std::cos((m + 1) * 7.0 * (p.x + 2 * p.y));
    return v;
  };
  const GridPtr g = build_rect_grid(1.0, 0.5, 32, phi);
  double lo = 1e300, hi = -1e300;
  for (std::size_t k : g->boundary_cells()) {
    lo = std::min(lo, g->boundary_value(k));
    hi = std::max(hi, g->boundary_value(k));
  }
  const ScalarField u = harmonic_extension(g);
  for (std::size_t k : g->interior_cells()) {
    CHECK(u[k] >= lo - 1e-12);
    CHECK(u[k] <= hi + 1e-12);
  }
}

TEST_CASE("a larger source lowers the solution") {
  const GridPtr g = build_disk_grid(1.0, 1.0, 48);
  const ScalarField small = RegionMask::where(g, [](Point p) { return p.x < 0.0; }).indicator(5.0);
  const ScalarField large = RegionMask::all_interior(g).indicator(5.0);
  const ScalarField u1 = solve_poisson(g, small);
  const ScalarField u2 = solve_poisson(g, large);
  for (std::size_t k : g->interior_cells()) CHECK(u2[k] <= u1[k] + 1e-10);
}

TEST_CASE("vortex disk solve converges to the closed form at first order") {
  const DiskProblem p(1.0, 1.0, 8.0, ProblemKind::Detached);
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    const GridPtr g = build_disk_grid(1.0, 1.0, n);
    const ScalarField rhs = RegionMask::where(g, [](Point c) {
      return std::hypot(c.x, c.y) < 0.6;
    }).indicator(8.0);
    const ScalarField u = solve_poisson(g, rhs);
    const ScalarField ref = ScalarField::sample(g, [&](Point c) {
      return psi_vortex_disk(p, 0.6, std::min(1.0, std::hypot(c.x, c.y)));
    });
    const double err = max_abs_diff(u, ref);
    CHECK(err < 2.0 / n);
    if (prev > 0.0) CHECK(prev / err > 1.5);
    prev = err;
  }
}

TEST_CASE("shifted solve satisfies its own residual") {
  const GridPtr g = build_disk_grid(1.0, 1.0, 40);
  std::vector<double> c(g->size(), 0.0);
  for (std::size_t k : g->interior_cells()) c[k] = 50.0 * (1.0 + g->center(k).x);
  const PoissonSolver solver(g);
  SolveOptions opts;
  opts.zero_boundary = true;
  const ScalarField rhs = RegionMask::all_interior(g).indicator(-1.0);
  const ScalarField u = solver.solve(rhs, opts, nullptr, &c);
  CHECK(solver.residual(u, rhs, &c) <= kDefaultPoissonTol);
  for (std::size_t k : g->interior_cells()) CHECK(u[k] > 0.0);
  for (std::size_t k : g->boundary_cells()) CHECK(u[k] == 0.0);

  c[g->interior_cells().front()] = -1.0;
  CHECK_THROWS_AS(solver.solve(rhs, opts, nullptr, &c), PreconditionError);
}

TEST_CASE("warm start reaches the same solution") {
  const GridPtr g = build_disk_grid(1.0, 1.0, 64);
  const ScalarField rhs = RegionMask::where(g, [](Point c) { return c.y > 0.2; }).indicator(3.0);
  const PoissonSolver solver(g);
  const ScalarField cold = solver.solve(rhs);
  const ScalarField guess = harmonic_extension(g);
  SolveStats s;
  const ScalarField warm = solver.solve(rhs, {}, &guess, nullptr, &s);
  CHECK(max_abs_diff(cold, warm) < 1e-9);
}

TEST_CASE("bad solver inputs are rejected") {
  const GridPtr g = build_disk_grid(1.0, 1.0, 16);
  const GridPtr other = build_disk_grid(1.0, 1.0, 16);
  SolveOptions opts;
  opts.tol = 0.0;
  CHECK_THROWS_AS(PoissonSolver(g).solve(ScalarField(g), opts), ConfigError);
  CHECK_THROWS_AS(PoissonSolver(g).solve(ScalarField(other)), PreconditionError);
}

TEST_CASE("discrete laplacian of the solution is the source") {
  const GridPtr g = build_disk_grid(1.0, 1.0, 32);
  const ScalarField rhs = RegionMask::where(g, [](Point c) { return c.x > 0.1; }).indicator(7.0);
  const ScalarField lap = laplacian(solve_poisson(g, rhs));
  CHECK(max_abs_diff(lap, rhs) <= kDefaultPoissonTol * 1.0001);
}
