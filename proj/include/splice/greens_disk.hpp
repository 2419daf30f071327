#pragma once

#include <functional>
#include <span>
#include <vector>

#include "splice/grid.hpp"

namespace splice {

/// Dirichlet Green's function of the Laplacian in the disk |z| < R,
///
///   G(z, zeta) = ln(|R^2 - z conj(zeta)| / (R |z - zeta|)),
///
/// normalised so that -Delta G = 2 pi delta. Throws SingularityError when
/// p == q and DomainError when either point lies outside the closed disk.
double green_disk(Point p, Point q, double R);

using GreenKernel = std::function<double(Point, Point, double)>;

/// (omega / 2 pi) * integral over B of G(p, .) at each evaluation point.
///
/// B must live on a disk grid. Cells are integrated with the midpoint rule
/// except the cell containing p, where the logarithmic part is integrated
/// exactly over the disk of equal area (radius h / sqrt(pi)) and the image
/// part is taken at the cell centre. `kernel` replaces G on the regular
/// cells; it exists to check that the comparison against closed forms is
/// sensitive to the kernel.
std::vector<double> convolve_region(const RegionMask& B, double omega,
                                    std::span<const Point> points,
                                    const GreenKernel& kernel = green_disk);

/// Goldshtik's admissibility test for a seed region B0: true iff
///
///   omega > psi0(p) / ((1 / 2pi) * integral over B0 of G(p, .))
///
/// at every supplied point of the seed's edge curve (psi0 taken at the
/// nearest cell centre). When it holds, the first iterate is negative on
/// the whole curve. Throws DegenerateSeedError when the convolution
/// vanishes at a point.
bool seed_condition_holds(const RegionMask& B0, std::span<const Point> gamma0,
                       const ScalarField& psi0, double omega);

}  // namespace splice
