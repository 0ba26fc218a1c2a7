#include "langevin/mollifier.hpp"

#include "langevin/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace langevin {

namespace {

double log_normalizer_for(int d) {
    // pi^{d/2} B(d/2,4) / Gamma(d/2) = 6 pi^{d/2} / Gamma(d/2 + 4)
    const double h = 0.5 * d;
    return std::log(6.0) + h * std::log(std::numbers::pi) - std::lgamma(h + 4.0);
}

void require_finite(std::span<const double> x, int dim) {
    if (static_cast<int>(x.size()) != dim)
        throw InputError("mollifier: point has dimension " + std::to_string(x.size()) +
                         ", expected " + std::to_string(dim));
    if (!all_finite(x)) throw InputError("mollifier: non-finite point");
}

}  // namespace

Mollifier::Mollifier(int dim, double radius) : dim_(dim), radius_(radius) {
    if (dim < 1) throw InputError("mollifier: dimension must be >= 1");
    if (!(radius > 0.0) || !(radius <= 1.0) || !std::isfinite(radius))
        throw InputError("mollifier: radius must lie in (0, 1]");
    log_norm_ = log_normalizer_for(dim);
    scale_ = std::exp(-log_norm_ - dim * std::log(radius));
}

double Mollifier::density(std::span<const double> x) const {
    require_finite(x, dim_);
    const double s2 = norm2(x) / (radius_ * radius_);
    if (s2 >= 1.0) return 0.0;
    const double t = 1.0 - s2;
    return scale_ * t * t * t;
}

void Mollifier::grad_density(std::span<const double> x, std::span<double> out) const {
    require_finite(x, dim_);
    const double s2 = norm2(x) / (radius_ * radius_);
    if (s2 >= 1.0) {
        for (double& v : out) v = 0.0;
        return;
    }
    const double t = 1.0 - s2;
    // d/dx [(1 - |x/r|^2)^3] = -6 (1 - |x/r|^2)^2 x / r^2
    const double c = -6.0 * scale_ * t * t / (radius_ * radius_);
    for (int i = 0; i < dim_; ++i) out[i] = c * x[i];
}

Vector Mollifier::grad_density(std::span<const double> x) const {
    Vector g(dim_);
    grad_density(x, g);
    return g;
}

void Mollifier::sample(Engine& rng, std::span<double> out) const {
    uniform_direction(rng, out);
    const double rad = radius_ * std::sqrt(sample_beta(rng, 0.5 * dim_, 4.0));
    for (double& v : out) v *= rad;
}

Vector Mollifier::sample(Engine& rng) const {
    Vector z(dim_);
    sample(rng, z);
    return z;
}

double grad_l1_norm(int dim) {
    if (dim < 1) throw InputError("grad_l1_norm: dimension must be >= 1");
    const double d = dim;
    return (d + 6.0) * (d + 4.0) * (d + 2.0) * d / ((d + 5.0) * (d + 3.0) * (d + 1.0));
}

double sample_beta(Engine& rng, double a, double b) {
    std::gamma_distribution<double> ga(a, 1.0);
    std::gamma_distribution<double> gb(b, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return x / (x + y);
}

}  // namespace langevin
