#pragma once

#include <functional>
#include <span>

namespace langevin {

using ScalarField = std::function<double(std::span<const double>)>;

/// Integral of f over the unit ball in d = 1, 2, 3 by tensor Gauss-Legendre in
/// radial/polar/spherical coordinates.
double integrate_unit_ball(int d, const ScalarField& f);

/// Integral of g(|x|) over the unit ball for any d (one-dimensional radial rule).
double integrate_radial(int d, const std::function<double(double)>& g);

/// Surface area of the unit sphere in R^d.
double sphere_area(int d);

}  // namespace langevin
