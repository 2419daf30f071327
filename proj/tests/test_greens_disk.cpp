#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "splice/errors.hpp"
#include "splice/elliptic.hpp"
#include "splice/greens_disk.hpp"

using namespace splice;

namespace {

// (1 / 2pi) * integral of G over the disk r < a, from the radial ODE.
double disk_potential(double a, double R, double r) {
  return r < a ? 0.25 * (a * a - r * r) + 0.5 * a * a * std::log(R / a)
               : 0.5 * a * a * std::log(R / r);
}

Point random_in_disk(std::mt19937_64& rng, double R) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (;;) {
    const Point p{R * U(rng), R * U(rng)};
    if (std::hypot(p.x, p.y) < R) return p;
  }
}

}  // namespace

TEST_CASE("green function is symmetric and positive") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Point p = random_in_disk(rng, 1.5), q = random_in_disk(rng, 1.5);
    const double g = green_disk(p, q, 1.5);
    CHECK(g == doctest::Approx(green_disk(q, p, 1.5)).epsilon(1e-12));
    CHECK(g > 0.0);
  }
}

TEST_CASE("green function from the centre is ln(R / r)") {
  for (double r : {0.01, 0.3, 0.99}) {
    CHECK(green_disk({0, 0}, {r * 0.6, r * 0.8}, 1.0) == doctest::Approx(std::log(1.0 / r)));
    CHECK(green_disk({0, 2 * r}, {0, 0}, 2.0) == doctest::Approx(std::log(1.0 / r)));
  }
}

TEST_CASE("green function vanishes on the circle") {
  for (double t = 0.0; t < 6.3; t += 0.7) {
    const Point rim{2.0 * std::cos(t), 2.0 * std::sin(t)};
    CHECK(std::abs(green_disk(rim, {0.3, -0.5}, 2.0)) < 1e-12);
  }
}

TEST_CASE("green function errors") {
  CHECK_THROWS_AS(green_disk({0.1, 0.2}, {0.1, 0.2}, 1.0), SingularityError);
  CHECK_THROWS_AS(green_disk({1.1, 0.0}, {0.0, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(green_disk({0.0, 0.0}, {0.0, -1.01}, 1.0), DomainError);
}

TEST_CASE("quadrature over a vortex disk reproduces both closed-form branches") {
  const int n = 64;
  const GridPtr g = build_disk_grid(1.0, 1.0, n);
  const double h = g->h();
  const RegionMask B = RegionMask::where(g, [](Point c) { return std::hypot(c.x, c.y) < 0.6; });
  std::vector<Point> probes;
  for (int i = 0; i < 20; ++i) {
    const double r = 0.02 + 0.96 * i / 19.0, t = 0.37 * i;
    probes.push_back({r * std::cos(t), r * std::sin(t)});
  }
  const std::vector<double> conv = convolve_region(B, 5.0, probes);
  const double tol = 5.0 * h * std::abs(std::log(h));
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double r = std::hypot(probes[i].x, probes[i].y);
    CHECK(std::abs(conv[i] / 5.0 - disk_potential(0.6, 1.0, r)) < tol);
  }
}

TEST_CASE("quadrature is monotone in the region and sensitive to the kernel") {
  const GridPtr g = build_disk_grid(1.0, 1.0, 32);
  const RegionMask small = RegionMask::where(g, [](Point c) { return c.x < -0.2; });
  const RegionMask big = RegionMask::where(g, [](Point c) { return c.x < 0.2; });
  const std::vector<Point> pts{{0.0, 0.0}, {0.5, 0.5}, {-0.3, 0.1}};
  const auto a = convolve_region(small, 1.0, pts);
  const auto b = convolve_region(big, 1.0, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(b[i] > a[i]);

  const GreenKernel scaled = [](Point p, Point q, double R) { return 1.1 * green_disk(p, q, R); };
  const auto c = convolve_region(big, 1.0, pts, scaled);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(c[i] > b[i] * 1.05);
}

TEST_CASE("quadrature needs a disk grid") {
  const GridPtr g = build_rect_grid(1.0, 1.0, 16, [](Point) { return 1.0; });
  const std::vector<Point> pts{{0.5, 0.5}};
  CHECK_THROWS_AS(convolve_region(RegionMask::all_interior(g), 1.0, pts), GeometryError);
}

TEST_CASE("seed condition separates seeds that grow from seeds that do not") {
  const GridPtr g = build_disk_grid(1.0, 1.0, 64);
  const ScalarField psi0 = harmonic_extension(g);
  auto circle = [](double r) {
    std::vector<Point> pts;
    for (int i = 0; i < 32; ++i) {
      const double t = 2.0 * std::numbers::pi * i / 32;
      pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return pts;
  };
  auto disk = [&](double r) {
    return RegionMask::where(g, [r](Point c) { return std::hypot(c.x, c.y) < r; });
  };
  // On the unit disk the condition at radius a reads y(a) < 0, true on (a1, a2).
  CHECK(seed_condition_holds(disk(0.5), circle(0.5), psi0, 16.0));
  CHECK_FALSE(seed_condition_holds(disk(0.2), circle(0.2), psi0, 16.0));
  CHECK_FALSE(seed_condition_holds(disk(0.5), circle(0.5), psi0, 8.0));
  CHECK_THROWS_AS(seed_condition_holds(RegionMask(g), circle(0.5), psi0, 16.0),
                  DegenerateSeedError);
}
