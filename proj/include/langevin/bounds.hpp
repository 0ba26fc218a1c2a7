#pragma once

#include "langevin/continuity.hpp"
#include "langevin/samplers.hpp"

#include <optional>

namespace langevin {

/// Constants of the W2 error theorem for a configured run. Tilde quantities refer to the
/// drift the chain follows in expectation (grad U for LMC, the mollified gradient otherwise).
struct BoundInputs {
    int d = 1;
    double beta = 1.0;
    double m = 1.0;
    double b = 0.0;
    double m_tilde = 1.0;
    double b_tilde = 0.0;
    double kappa0 = 0.0;      ///< log E exp(|xi|) of the initial law
    double p0_sup_log = 0.0;  ///< log of the sup of the initial density
    double grad_u_mnorm = 0.0;
    double g_tilde_mnorm = 0.0;
    ModulusSpec omega_grad_u = ModulusSpec::lipschitz(1.0);
    double omega_g_tilde_one = 1.0;
    double u0 = 0.0;
    Delta delta;
    double a_abs = 1.0;  ///< absolute constant of the Poincare bound
};

void validate(const BoundInputs& in);

/// 1 ^ m~/(2 (omega_G~(1)^2 + delta_v2)); admissible step sizes are the open interval below it.
double max_step(const BoundInputs& in);

/// Throws PreconditionError naming the violated inequality.
void check_step(const BoundInputs& in, double eta);

struct TheoremBound {
    long double c0 = 0;
    long double c1 = 0;
    long double c1_prime = 0;
    long double c2_inner = 0;
    std::optional<long double> c2;  ///< unset when c2_inner < 0
    long double kappa_inf = 0;
    long double c_p_bound = 0;
    long double log_c_p = 0;
    long double c_ls_bound = 0;
    long double log_c_ls = 0;
    long double f_value = 0;
    long double first_term = 0;
    std::optional<long double> second_term;
    std::optional<long double> w2_bound;
    bool f_at_most_one = false;
};

long double kappa_inf(const BoundInputs& in, double eta);

long double poincare_bound(const BoundInputs& in);
/// Natural log of poincare_bound, finite even when the bound overflows.
long double log_poincare_bound(const BoundInputs& in);

long double log_sobolev_bound(const BoundInputs& in, double r);
long double log_log_sobolev_bound(const BoundInputs& in, double r);

/// C0 (omega(r)/r eta + beta (delta_r2 kappa_inf + delta_r0)) k eta.
long double kl_discretization(const BoundInputs& in, double r, double eta, double k);
long double c0_constant(const BoundInputs& in, double eta);

/// Quantity under the square root defining C2; may be negative (then C2 is undefined).
long double kl_initial(const BoundInputs& in);

/// beta r (|grad U(0)| + 3 omega(1)/2 + omega(1)/2 * first_moment); the moment defaults to
/// sqrt((b + d/beta)/m).
long double kl_gibbs(const BoundInputs& in, double r, double grad_at_zero,
                     std::optional<double> first_moment = std::nullopt);

long double w2_from_kl(long double kl, long double c_nu);

TheoremBound theorem_bound(const BoundInputs& in, double r, double eta, double k);

/// Bound on E exp(alpha |X_t|^2) for the mollified diffusion started from xi with
/// E exp(alpha |xi|^2) = initial_moment; alpha must lie in (0, beta m / 2).
long double exp_moment_bound(const BoundInputs& in, double t, double alpha, double initial_moment);

/// log E exp(scale * chi_d) = kappa0 of N(0, scale^2 I).
double gaussian_kappa0(int d, double scale);
/// E exp(alpha |xi|^2) for xi ~ N(0, scale^2 I); needs 2 alpha scale^2 < 1.
double gaussian_exp_sq_moment(int d, double scale, double alpha);

/// Inputs derived from an oracle, chain configuration and bound radius r. Point and custom
/// initial laws have no usable density and throw PreconditionError.
BoundInputs make_bound_inputs(const GradientOracle& oracle, const ChainConfig& cfg, double r,
                              double a_abs = 1.0);

}  // namespace langevin
