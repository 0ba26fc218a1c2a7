#include "langevin/quadrature.hpp"

#include "langevin/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>

namespace langevin {

namespace {

using Rule = boost::math::quadrature::gauss<double, 40>;

template <class F>
double gl(F f, double a, double b) {
    return Rule::integrate(f, a, b);
}

}  // namespace

double sphere_area(int d) {
    if (d < 1) throw InputError("dimension must be >= 1");
    return 2 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
}

double integrate_radial(int d, const std::function<double(double)>& g) {
    if (d < 1) throw InputError("dimension must be >= 1");
    double radial = gl([&](double t) { return g(t) * std::pow(t, d - 1); }, 0.0, 1.0);
    return sphere_area(d) * radial;
}

double integrate_unit_ball(int d, const ScalarField& f) {
    std::array<double, 3> x{};
    switch (d) {
        case 1: {
            auto g = [&](double t) {
                x[0] = t;
                return f(std::span<const double>(x.data(), 1));
            };
            return gl(g, -1.0, 0.0) + gl(g, 0.0, 1.0);
        }
        case 2:
            return gl(
                [&](double rho) {
                    return rho * gl(
                                     [&](double phi) {
                                         x[0] = rho * std::cos(phi);
                                         x[1] = rho * std::sin(phi);
                                         return f(std::span<const double>(x.data(), 2));
                                     },
                                     0.0, 2 * M_PI);
                },
                0.0, 1.0);
        case 3:
            return gl(
                [&](double rho) {
                    return rho * rho * gl(
                                           [&](double theta) {
                                               const double st = std::sin(theta), ct = std::cos(theta);
                                               return st * gl(
                                                               [&](double phi) {
                                                                   x[0] = rho * st * std::cos(phi);
                                                                   x[1] = rho * st * std::sin(phi);
                                                                   x[2] = rho * ct;
                                                                   return f(std::span<const double>(x.data(), 3));
                                                               },
                                                               0.0, 2 * M_PI);
                                           },
                                           0.0, M_PI);
                },
                0.0, 1.0);
        default:
            throw InputError("ball quadrature supports d in {1, 2, 3}");
    }
}

}  // namespace langevin
