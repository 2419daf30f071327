#include <doctest.h>

#include <cmath>
#include <random>

#include "splice/disk_analytic.hpp"
#include "splice/errors.hpp"
#include "splice/free_boundary.hpp"
#include "splice/variational.hpp"

using namespace splice;

namespace {

RegionMask disk(const GridPtr& g, double r) {
  return RegionMask::where(g, [r](Point c) { return std::hypot(c.x, c.y) < r; });
}

// phi = 1 + x on the unit square gives a nonconstant harmonic extension.
GridPtr sloped_square(int n) {
  return build_rect_grid(1.0, 1.0, n, [](Point p) { return 1.0 + p.x; });
}

}  // namespace

TEST_CASE("empty region gives I = q exactly") {
  const GridPtr g = sloped_square(32);
  const FunctionalBreakdown b = functional_eval(g, RegionMask(g), 7.0);
  CHECK(b.A == 0.0);
  CHECK(b.Q == 0.0);
  CHECK(b.I == b.q);
  CHECK(b.q > 0.0);
}

TEST_CASE("boundary energy of a linear extension") {
  // psi0 = 1 + x: every horizontal edge with an Interior end contributes h^2.
  const int n = 16;
  const GridPtr g = sloped_square(n);
  const double h = 1.0 / n;
  const double edges = static_cast<double>(n * (n - 1));
  CHECK(functional_eval(g, RegionMask(g), 1.0).q == doctest::Approx(edges * h * h).epsilon(1e-8));
}

TEST_CASE("trinomial identity holds to round-off") {
  const GridPtr g = sloped_square(24);
  const FunctionalEvaluator eval(g);
  std::mt19937 rng(5);
  std::bernoulli_distribution coin(0.3);
  for (int t = 0; t < 10; ++t) {
    RegionMask B(g);
    for (std::size_t k : g->interior_cells()) {
      if (coin(rng)) B.insert(k);
    }
    const double w = 0.5 + t;
    const FunctionalBreakdown b = eval.evaluate(B, w);
    CHECK(b.I == doctest::Approx(b.q + 2 * w * b.A - w * w * b.Q).epsilon(1e-15));
    CHECK(b.A > 0.0);
    CHECK(b.Q > 0.0);
  }
}

TEST_CASE("increment matches the direct difference") {
  const GridPtr g = sloped_square(24);
  const FunctionalEvaluator eval(g);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    const double cx = U(rng), cy = U(rng), r = 0.1 + 0.3 * U(rng), w = 1.0 + 20.0 * U(rng);
    const RegionMask B = RegionMask::where(g, [&](Point c) { return std::hypot(c.x - cx, c.y - cy) < r; });
    const RegionMask D = RegionMask::where(g, [&](Point c) {
      return std::hypot(c.x - cx, c.y - cy) >= r && c.y > 0.6;
    });
    const double inc = eval.increment(B, D, w);
    const double direct = eval.evaluate(B.united(D), w).I - eval.evaluate(B, w).I;
    CHECK(std::abs(inc - direct) <= 10.0 * kDefaultPoissonTol);
  }
}

TEST_CASE("increment preconditions") {
  const GridPtr g = sloped_square(16);
  const RegionMask B = RegionMask::where(g, [](Point c) { return c.x < 0.5; });
  CHECK(functional_increment(g, B, RegionMask(g), 3.0) == 0.0);
  CHECK_THROWS_AS(functional_increment(g, B, B, 3.0), PreconditionError);
}

TEST_CASE("adding cells where the stream function is negative lowers I") {
  const GridPtr g = build_disk_grid(1.0, 1.0, 64);
  const FunctionalEvaluator eval(g);
  const RegionMask B = disk(g, 0.5);
  const ScalarField psi = eval.stream_function(B, 16.0);
  std::size_t tried = 0;
  for (std::size_t c : B.edge_cells()) {
    for (std::size_t nb : g->neighbors(c)) {
      if (!g->is_interior(nb) || B.contains(nb) || !(psi[nb] < 0.0)) continue;
      RegionMask D(g);
      D.insert(nb);
      CHECK(eval.increment(B, D, 16.0) < 0.0);
      ++tried;
    }
    if (tried > 20) break;
  }
  CHECK(tried > 0);
}

TEST_CASE("disk family matches the closed-form curve to first order") {
  const DiskProblem p(1.0, 1.0, 16.0, ProblemKind::Detached);
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    const GridPtr g = build_disk_grid(1.0, 1.0, n);
    const FunctionalEvaluator eval(g);
    double worst = 0.0;
    for (double a : {0.3, 0.5, 0.7, 0.9}) {
      const RegionMask B = disk(g, a);
      const double I = eval.evaluate(B, 16.0).I;
      worst = std::max(worst, std::abs(I - functional_curve_detached(p, region_radius_estimate(B))));
    }
    const auto roots = solve_roots_detached(p);
    const double range = functional_curve_detached(p, roots[0].a) - functional_curve_detached(p, roots[1].a);
    CHECK(worst < 10.0 * g->h() * range);
    if (prev > 0.0) CHECK(worst < prev);
    prev = worst;
  }
}

TEST_CASE("inscribed-radius bound") {
  const BoundL d = bound_L(*build_disk_grid(1.0, 1.0, 64));
  CHECK(d.L == 4.0);
  CHECK(d.R1(8.0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(d.R1(3.0) == 0.0);
  CHECK(bound_L(*build_rect_grid(1.0, 1.0, 32, [](Point) { return 1.0; })).L ==
        doctest::Approx(16.0));
  CHECK(bound_L(*build_disk_grid(1.0, 0.0, 32)).L == 0.0);
}

TEST_CASE("full-domain bound on the disk approaches 16") {
  double prev = 1e300;
  for (int n : {32, 64, 128}) {
    const GridPtr g = build_disk_grid(1.0, 1.0, n);
    const BoundL1 b = bound_L1(g, 1.0);
    const double err = std::abs(b.exact - 16.0);
    CHECK(err < 40.0 * g->h());
    CHECK(err < prev);
    prev = err;
    CHECK(b.full.A == doctest::Approx(std::acos(-1.0)).epsilon(0.05));
    CHECK(b.estimate >= b.exact);
    CHECK(b.R1 == 1.0);
  }
}

TEST_CASE("functional is negative above the exact bound") {
  for (const GridPtr& g : {build_disk_grid(1.0, 1.0, 48), sloped_square(32),
                           build_rect_grid(2.0, 1.0, 40, [](Point p) { return 0.5 + p.y; })}) {
    const BoundL1 b = bound_L1(g, 1.0);
    const FunctionalEvaluator eval(g);
    const RegionMask all = RegionMask::all_interior(g);
    CHECK(eval.evaluate(all, 1.01 * b.exact).I < 0.0);
    CHECK(eval.evaluate(all, 0.99 * b.exact).I > 0.0);
  }
}

TEST_CASE("scans locate the radial roots") {
  const DiskProblem pd(1.0, 1.0, 16.0, ProblemKind::Detached);
  ScanOptions opts;
  opts.n = 64;
  const auto curve = scan_disk_family(pd, Family::ConcentricDisks, 65, opts);
  const CurveExtrema ex = locate_extrema(curve, Family::ConcentricDisks);
  const auto roots = solve_roots_detached(pd);
  const double h = 2.0 / opts.n;
  REQUIRE(ex.max);
  REQUIRE(ex.min);
  CHECK(std::abs(ex.max->a - roots[0].a) <= 3 * h);
  CHECK(std::abs(ex.min->a - roots[1].a) <= 3 * h);
  CHECK(ex.max->value > 0.0);

  const DiskProblem pc(1.0, 1.0, 8.0, ProblemKind::Coriolis);
  const auto ring = scan_disk_family(pc, Family::BoundaryRings, 65, opts);
  const CurveExtrema rx = locate_extrema(ring, Family::BoundaryRings);
  REQUIRE(rx.max);
  CHECK_FALSE(rx.min);
  CHECK(std::abs(rx.max->a - solve_root_coriolis(pc)->a) <= 3 * h);
  for (const ScanPoint& s : ring) {
    CHECK(s.analytic == doctest::Approx(functional_curve_coriolis(pc, s.a)));
  }
}

TEST_CASE("scan result does not depend on the thread count") {
  const DiskProblem p(1.0, 1.0, 16.0, ProblemKind::Detached);
  ScanOptions one;
  one.n = 32;
  ScanOptions many = one;
  many.jobs = 4;
  const auto a = scan_disk_family(p, Family::ConcentricDisks, 16, one);
  const auto b = scan_disk_family(p, Family::ConcentricDisks, 16, many);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].a == b[i].a);
    CHECK(a[i].value.I == b[i].value.I);
  }
}

TEST_CASE("scan arguments are validated") {
  const DiskProblem p(1.0, 1.0, 16.0, ProblemKind::Detached);
  CHECK_THROWS_AS(scan_disk_family(p, Family::ConcentricDisks, 8), ConfigError);
  ScanOptions o;
  o.a_min = 0.5;
  o.a_max = 0.4;
  CHECK_THROWS_AS(scan_disk_family(p, Family::ConcentricDisks, 16, o), ConfigError);
}
