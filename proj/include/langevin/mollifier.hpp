#pragma once

#include "langevin/random.hpp"
#include "langevin/vec.hpp"

#include <span>

namespace langevin {

/// Compact polynomial mollifier rho_r(x) = r^{-d} rho(x / r) with
/// rho(x) = Z_d^{-1} (1 - |x|^2)^3 on the closed unit ball and
/// Z_d = pi^{d/2} B(d/2, 4) / Gamma(d/2).
///
/// rho is C^2: the density, its gradient and its Hessian vanish on |x| = 1.
class Mollifier {
public:
    Mollifier(int dim, double radius);

    int dim() const noexcept { return dim_; }
    double radius() const noexcept { return radius_; }

    /// log Z_d, the log normaliser of the unit-radius kernel.
    double log_normalizer() const noexcept { return log_norm_; }

    double density(std::span<const double> x) const;

    void grad_density(std::span<const double> x, std::span<double> out) const;
    Vector grad_density(std::span<const double> x) const;

    /// Draw r * sqrt(B) * theta with B ~ Beta(d/2, 4) and theta uniform on the sphere.
    /// The squared radius of a unit-kernel draw has law Beta(d/2, 4), which is what the
    /// substitution s = |x|^2 in the normalising integral shows.
    void sample(Engine& rng, std::span<double> out) const;
    Vector sample(Engine& rng) const;

private:
    int dim_;
    double radius_;
    double log_norm_;
    double scale_;  // Z_d^{-1} r^{-d}
};

/// Exact L1 norm of grad rho for the unit kernel:
/// (d+6)(d+4)(d+2)d / ((d+5)(d+3)(d+1)); always in [d, d+4].
double grad_l1_norm(int dim);

/// Beta(a, b) draw through two Gamma variates.
double sample_beta(Engine& rng, double a, double b);

}  // namespace langevin
