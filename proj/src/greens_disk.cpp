#include "splice/greens_disk.hpp"

#include <cmath>
#include <numbers>

#include "splice/errors.hpp"

namespace splice {

namespace {

constexpr double kPi = std::numbers::pi;

void check_in_disk(Point p, double R, const char* what) {
  if (p.x * p.x + p.y * p.y > R * R * (1.0 + 1e-12)) {
    throw DomainError(std::string(what) + " lies outside the disk");
  }
}

// ln(|R^2 - z conj(zeta)| / R): the image part of the kernel.
double image_part(Point p, Point q, double R) {
  const double re = R * R - (p.x * q.x + p.y * q.y);
  const double im = p.x * q.y - p.y * q.x;
  return std::log(std::hypot(re, im) / R);
}

// Integral of ln(1/|p - zeta|) over the disk of radius rho centred at c,
// for p at distance d from c.
double log_disk_integral(double d, double rho) {
  if (d < rho) {
    return kPi * rho * rho * std::log(1.0 / rho) + 0.5 * kPi * (rho * rho - d * d);
  }
  return kPi * rho * rho * std::log(1.0 / d);
}

}  // namespace

double green_disk(Point p, Point q, double R) {
  check_in_disk(p, R, "first point");
  check_in_disk(q, R, "second point");
  const double d = std::hypot(p.x - q.x, p.y - q.y);
  if (d == 0.0) throw SingularityError("Green's function at coincident points");
  return image_part(p, q, R) - std::log(d);
}

std::vector<double> convolve_region(const RegionMask& B, double omega,
                                    std::span<const Point> points,
                                    const GreenKernel& kernel) {
  const Grid2D& g = B.grid();
  if (!g.disk()) throw GeometryError("Green's quadrature needs a disk grid");
  const double R = g.disk()->radius;
  const Point o = g.disk()->center;
  const double h = g.h();
  const double h2 = h * h;
  const double rho = h / std::sqrt(kPi);
  const auto cells = B.cells();

  std::vector<double> out;
  out.reserve(points.size());
  for (const Point& p0 : points) {
    const Point p{p0.x - o.x, p0.y - o.y};
    check_in_disk(p, R, "evaluation point");
    const auto self = g.locate(p0);
    double sum = 0.0;
    for (std::size_t k : cells) {
      const Point c0 = g.center(k);
      const Point c{c0.x - o.x, c0.y - o.y};
      if (self && *self == k) {
        const double d = std::hypot(p.x - c.x, p.y - c.y);
        sum += log_disk_integral(d, rho) + image_part(p, c, R) * h2;
      } else {
        sum += kernel(p, c, R) * h2;
      }
    }
    out.push_back(omega / (2.0 * kPi) * sum);
  }
  return out;
}

bool seed_condition_holds(const RegionMask& B0, std::span<const Point> gamma0,
                          const ScalarField& psi0, double omega) {
  const auto conv = convolve_region(B0, 1.0, gamma0);
  bool holds = true;
  for (std::size_t i = 0; i < gamma0.size(); ++i) {
    if (!(conv[i] > 0.0)) {
      throw DegenerateSeedError("seed convolution vanishes at a curve point");
    }
    const auto k = psi0.grid().locate(gamma0[i]);
    if (!k || !psi0.grid().is_defined(*k)) {
      throw DomainError("curve point is not on a defined cell");
    }
    if (!(omega > psi0[*k] / conv[i])) holds = false;
  }
  return holds;
}

}  // namespace splice
