#include "langevin/bounds.hpp"

#include "langevin/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace langevin {

namespace {

using ld = long double;

ld log_add(ld a, ld b) {
    if (a < b) std::swap(a, b);
    if (!std::isfinite(b)) return a;
    return a + std::log1p(std::exp(b - a));
}

ld dbm(const BoundInputs& in) { return in.d + (static_cast<ld>(in.b) + in.m) * in.beta; }

ld omega_over_r(const BoundInputs& in, double r) {
    if (!(r > 0 && r <= 1)) throw InputError("radius must lie in (0, 1]");
    ld w = in.omega_grad_u.eval(r);
    if (!(w > 0)) throw DegenerateModulus("gradient modulus vanishes at r");
    return w / r;
}

}  // namespace

void validate(const BoundInputs& in) {
    auto pos = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v)) throw InputError(std::string(name) + " must be positive");
    };
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0) || !std::isfinite(v)) throw InputError(std::string(name) + " must be nonnegative");
    };
    if (in.d < 1) throw InputError("dimension must be >= 1");
    pos(in.beta, "beta");
    pos(in.m, "m");
    nonneg(in.b, "b");
    pos(in.m_tilde, "m_tilde");
    nonneg(in.b_tilde, "b_tilde");
    nonneg(in.kappa0, "kappa0");
    if (!std::isfinite(in.p0_sup_log)) throw InputError("p0_sup_log must be finite");
    nonneg(in.grad_u_mnorm, "grad_u_mnorm");
    nonneg(in.g_tilde_mnorm, "g_tilde_mnorm");
    nonneg(in.omega_g_tilde_one, "omega_g_tilde_one");
    nonneg(in.u0, "u0");
    nonneg(in.delta.bias0, "delta_b0");
    nonneg(in.delta.bias2, "delta_b2");
    nonneg(in.delta.var0, "delta_v0");
    nonneg(in.delta.var2, "delta_v2");
    pos(in.a_abs, "a");
}

double max_step(const BoundInputs& in) {
    double w = in.omega_g_tilde_one;
    double denom = 2 * (w * w + in.delta.var2);
    if (denom <= 0) return 1.0;
    return std::min(1.0, in.m_tilde / denom);
}

void check_step(const BoundInputs& in, double eta) {
    validate(in);
    double cap = max_step(in);
    if (!(eta > 0) || !(eta < cap)) {
        std::ostringstream os;
        os.precision(17);
        os << "step size must satisfy 0 < eta < 1 ^ m~/(2(omega_G~(1)^2 + delta_v2)) = " << cap
           << ", got " << eta;
        throw PreconditionError(os.str());
    }
}

long double kappa_inf(const BoundInputs& in, double eta) {
    check_step(in, eta);
    ld g = in.g_tilde_mnorm;
    return in.kappa0 + 2 * std::max<ld>(1, 1 / static_cast<ld>(in.m_tilde)) *
                           (in.b_tilde + eta * g * g + in.delta.var0 + in.d / static_cast<ld>(in.beta));
}

long double log_poincare_bound(const BoundInputs& in) {
    validate(in);
    const ld mb = static_cast<ld>(in.m) * in.beta;
    const ld s = dbm(in);
    ld first = std::log(4 / (mb * s));
    ld second = std::log(8 * in.a_abs * s / mb) +
                in.beta * (25.0L / 16 * in.grad_u_mnorm * (1 + 8 * s / mb) + in.u0);
    return log_add(first, second);
}

long double poincare_bound(const BoundInputs& in) { return std::exp(log_poincare_bound(in)); }

long double log_log_sobolev_bound(const BoundInputs& in, double r) {
    const ld wr = omega_over_r(in, r);
    const ld mb = static_cast<ld>(in.m) * in.beta;
    const ld s = dbm(in);
    const ld log_cp = log_poincare_bound(in);
    const ld lead = (in.d + 4) * wr;
    // lead * 32/(mb)^2 + lead * 12 s/(mb) c_P + 2r/(lead r) + 2 c_P
    ld t = std::log(lead * 32 / (mb * mb));
    t = log_add(t, std::log(lead * 12 * s / mb) + log_cp);
    t = log_add(t, std::log(2 / ((in.d + 4) * wr)));
    t = log_add(t, std::log(2.0L) + log_cp);
    return t;
}

long double log_sobolev_bound(const BoundInputs& in, double r) {
    return std::exp(log_log_sobolev_bound(in, r));
}

long double c0_constant(const BoundInputs& in, double eta) {
    const ld ki = kappa_inf(in, eta);
    const ld g = in.g_tilde_mnorm, w = in.omega_g_tilde_one;
    return (in.d + 4) * (in.beta / 3.0L * (in.delta.var0 + g * g + (w * w + in.delta.var2) * ki) +
                         in.d / 2.0L);
}

long double kl_discretization(const BoundInputs& in, double r, double eta, double k) {
    if (!(k >= 0)) throw InputError("k must be nonnegative");
    const ld c0 = c0_constant(in, eta);
    const ld ki = kappa_inf(in, eta);
    const ld dr0 = static_cast<ld>(in.delta.bias0) + in.delta.var0;
    const ld dr2 = static_cast<ld>(in.delta.bias2) + in.delta.var2;
    return (c0 * omega_over_r(in, r) * eta + in.beta * (dr2 * ki + dr0)) * k * eta;
}

long double kl_initial(const BoundInputs& in) {
    validate(in);
    const ld mb = static_cast<ld>(in.m) * in.beta;
    const ld w1 = in.omega_grad_u.eval(1.0);
    return in.p0_sup_log + in.d / 2.0L * std::log(3 * M_PIl / mb) +
           in.beta * (w1 / 2 * in.kappa0 + 2.5L * in.grad_u_mnorm * std::sqrt(static_cast<ld>(in.kappa0)) +
                      in.u0 + in.b / 2.0L * std::log(3.0L));
}

long double kl_gibbs(const BoundInputs& in, double r, double grad_at_zero,
                     std::optional<double> first_moment) {
    validate(in);
    if (!(r >= 0)) throw InputError("radius must be nonnegative");
    if (!(grad_at_zero >= 0)) throw InputError("|grad U(0)| must be nonnegative");
    ld mom = first_moment ? *first_moment
                          : std::sqrt((in.b + in.d / static_cast<ld>(in.beta)) / in.m);
    if (!(mom >= 0)) throw InputError("first moment must be nonnegative");
    const ld w1 = in.omega_grad_u.eval(1.0);
    return in.beta * static_cast<ld>(r) * (grad_at_zero + 1.5L * w1 + w1 / 2 * mom);
}

long double w2_from_kl(long double kl, long double c_nu) {
    if (!(kl >= 0)) throw InputError("KL divergence must be nonnegative");
    if (!(c_nu > 0)) throw InputError("constant must be positive");
    return c_nu * (std::sqrt(kl) + std::pow(kl / 2, 0.25L));
}

TheoremBound theorem_bound(const BoundInputs& in, double r, double eta, double k) {
    check_step(in, eta);
    if (!(k >= 0)) throw InputError("k must be nonnegative");
    TheoremBound tb;
    tb.kappa_inf = kappa_inf(in, eta);
    tb.c0 = c0_constant(in, eta);
    const ld bm = static_cast<ld>(in.beta) * in.m;
    const ld tail = 32 * (in.b + in.m + in.d / static_cast<ld>(in.beta)) / in.m +
                    10 / std::min<ld>(1, bm / 4);
    tb.c1 = 2 * std::sqrt(4 * static_cast<ld>(in.kappa0) + tail);
    tb.c1_prime = 2 * std::sqrt(tail);
    tb.c2_inner = kl_initial(in);
    if (tb.c2_inner >= 0) tb.c2 = std::sqrt(tb.c2_inner);
    tb.log_c_p = log_poincare_bound(in);
    tb.c_p_bound = std::exp(tb.log_c_p);
    tb.log_c_ls = log_log_sobolev_bound(in, r);
    tb.c_ls_bound = std::exp(tb.log_c_ls);

    tb.f_value = kl_discretization(in, r, eta, k) +
                 in.beta * static_cast<ld>(r) * in.grad_u_mnorm / 2 *
                     (3 + std::sqrt((in.b + in.d / static_cast<ld>(in.beta)) / in.m));
    tb.f_at_most_one = tb.f_value <= 1;
    tb.first_term = 2 * tb.c1 * (std::sqrt(tb.f_value) + std::pow(tb.f_value, 0.25L));
    if (tb.c2) {
        ld log_rate = std::log(k * static_cast<ld>(eta)) - std::log(2 * static_cast<ld>(in.beta)) - tb.log_c_ls;
        ld decay = k > 0 ? std::exp(-std::exp(log_rate)) : 1.0L;
        tb.second_term = tb.c1_prime * std::sqrt(*tb.c2 + std::sqrt(*tb.c2)) * decay;
        tb.w2_bound = tb.first_term + *tb.second_term;
    }
    return tb;
}

long double exp_moment_bound(const BoundInputs& in, double t, double alpha, double initial_moment) {
    validate(in);
    const ld mbar = in.m / 2.0L, bbar = static_cast<ld>(in.b) + in.m;
    if (!(alpha > 0) || !(alpha < in.beta * mbar))
        throw PreconditionError("exponent must satisfy 0 < alpha < beta m / 2");
    if (!(t >= 0)) throw InputError("time must be nonnegative");
    if (!(initial_moment >= 1)) throw InputError("E exp(alpha |xi|^2) is at least 1");
    const ld rate = 2 * alpha * (bbar + in.d / static_cast<ld>(in.beta));
    const ld decay = std::exp(-rate * t);
    return initial_moment * decay +
           2 * std::exp(rate / (mbar - alpha / static_cast<ld>(in.beta))) * (1 - decay);
}

double gaussian_kappa0(int d, double scale) {
    if (d < 1) throw InputError("dimension must be >= 1");
    if (!(scale > 0) || !std::isfinite(scale)) throw InputError("scale must be positive");
    // chi_d density t^{d-1} e^{-t^2/2} / (2^{d/2-1} Gamma(d/2)); shift by the integrand's log at its mode
    const double log_norm = (d / 2.0 - 1) * std::log(2.0) + std::lgamma(d / 2.0);
    auto log_f = [&](double t) {
        return scale * t + (d == 1 ? 0.0 : (d - 1) * std::log(t)) - t * t / 2 - log_norm;
    };
    const double mode = (scale + std::sqrt(scale * scale + 4.0 * (d - 1))) / 2;
    const double shift = log_f(mode);
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double t) { return t > 0 || d == 1 ? std::exp(log_f(t) - shift) : 0.0; };
    double val = integrator.integrate(f);
    return shift + std::log(val);
}

double gaussian_exp_sq_moment(int d, double scale, double alpha) {
    if (d < 1) throw InputError("dimension must be >= 1");
    double q = 1 - 2 * alpha * scale * scale;
    if (!(q > 0)) throw PreconditionError("exp moment of the Gaussian is infinite");
    return std::pow(q, -d / 2.0);
}

namespace {

struct InitTerms {
    double kappa0;
    double p0_sup_log;
};

InitTerms init_terms(const InitLaw& init, int d) {
    if (auto* g = std::get_if<GaussianInit>(&init))
        return {gaussian_kappa0(d, g->scale),
                -d / 2.0 * std::log(2 * M_PI * g->scale * g->scale)};
    throw PreconditionError("error bound needs an initial law with a bounded density");
}

}  // namespace

BoundInputs make_bound_inputs(const GradientOracle& oracle, const ChainConfig& cfg, double r,
                              double a_abs) {
    validate(cfg);
    BoundInputs in;
    in.d = oracle.dim();
    in.beta = cfg.beta;
    in.a_abs = a_abs;
    in.delta = oracle.delta(r);
    auto [kappa0, p0_log] = init_terms(cfg.init, in.d);
    in.kappa0 = kappa0;
    in.p0_sup_log = p0_log;

    auto fill = [&](double m, double b, const ModulusSpec& w, double g0, double u0, bool smoothed) {
        in.m = m;
        in.b = b;
        in.omega_grad_u = w;
        in.u0 = u0;
        const double w1 = w.eval(1.0);
        in.grad_u_mnorm = g0 + w1;
        if (smoothed) {
            in.m_tilde = m / 2;
            in.b_tilde = b + m;
            in.omega_g_tilde_one = 3 * w1;
            in.g_tilde_mnorm = (g0 + w1) + in.omega_g_tilde_one;
        } else {
            in.m_tilde = m;
            in.b_tilde = b;
            in.omega_g_tilde_one = w1;
            in.g_tilde_mnorm = g0 + w1;
        }
    };
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ExactGradient>) {
                const auto& p = k.potential;
                fill(p.m, p.b, p.modulus, p.grad_at_zero, p.u0, false);
            } else if constexpr (std::is_same_v<K, SphericalSmoothed>) {
                const auto& p = k.potential;
                fill(p.m, p.b, p.modulus, p.grad_at_zero, p.u0, true);
            } else if constexpr (std::is_same_v<K, FiniteSumSpherical>) {
                const auto& p = k.potential;
                fill(p.m, p.b, p.component_modulus, p.grad_at_zero, p.u0, true);
            } else {
                throw InputError("custom oracles need explicit bound inputs");
            }
        },
        oracle.kind());
    validate(in);
    return in;
}

}  // namespace langevin
