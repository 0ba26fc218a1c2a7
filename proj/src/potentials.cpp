#include "langevin/potentials.hpp"

#include "langevin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace langevin {

namespace {

double param_or(const Params& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown(const Params& params, std::initializer_list<const char*> allowed,
                    const std::string& name) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : params) {
        if (!ok.count(k)) throw InputError("potential '" + name + "': unknown parameter '" + k + "'");
        if (!std::isfinite(v)) throw InputError("potential '" + name + "': non-finite parameter '" + k + "'");
    }
}

double sign0(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// sign(t)|t|^alpha, with the square root special-cased.
double signed_pow(double t, double alpha) {
    const double a = std::abs(t);
    const double p = alpha == 0.5 ? std::sqrt(a) : std::pow(a, alpha);
    return t < 0.0 ? -p : p;
}

double hoelder_mix_constant(int d, double alpha) {
    // |h(x) - h(y)| <= 2^{1-alpha} d^{(1-alpha)/2} |x - y|^alpha for h_i = sign|.|^alpha
    return 1.0 + std::pow(2.0, 1.0 - alpha) * std::pow(static_cast<double>(d), 0.5 * (1.0 - alpha));
}

// psi(t) = 1 / (1 + e^t): bounded, smooth, non-convex.
double psi(double t) {
    if (t > 0.0) {
        const double e = std::exp(-t);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(t));
}

double sigmoid(double t) { return psi(-t); }

double psi_prime(double t) { return -sigmoid(t) * sigmoid(-t); }

// max |psi''| = max |s(1-s)(1-2s)| = 1/(6 sqrt 3)
constexpr double kPsiCurvature = 0.09622504486493763;

// min over t of t psi'(t - shift) + lambda1 |t|; only t > 0 can be negative.
double elastic_min_coordinate_term(double lambda1, double shift) {
    auto g = [&](double t) { return t * psi_prime(t - shift) + lambda1 * std::abs(t); };
    const double hi = std::max(60.0, shift + 60.0);
    const int n = 200000;
    double best_t = 0.0, best = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = hi * i / n;
        const double v = g(t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    // golden-section refinement around the grid minimiser
    double lo = std::max(0.0, best_t - hi / n), up = best_t + hi / n;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it) {
        const double a = up - phi * (up - lo), c = lo + phi * (up - lo);
        if (g(a) < g(c))
            up = c;
        else
            lo = a;
    }
    return std::min(best, g(0.5 * (lo + up)));
}

PotentialSpec make_quadratic(int d) {
    PotentialSpec p;
    p.name = "quadratic";
    p.dim = d;
    p.value = [](std::span<const double> x) { return 0.5 * norm2(x); };
    p.weak_grad = [](std::span<const double> x, std::span<double> g) {
        std::copy(x.begin(), x.end(), g.begin());
    };
    p.m = 1.0;
    p.b = 0.0;
    p.modulus = ModulusSpec::lipschitz(1.0);
    p.grad_at_zero = 0.0;
    p.u0 = 0.5;
    return p;
}

PotentialSpec make_double_well(int d, const Params& params) {
    reject_unknown(params, {"c", "radius"}, "double_well");
    const double c = param_or(params, "c", 1.0);
    const double R = param_or(params, "radius", 3.0);
    if (!(R > 0.0)) throw InputError("double_well: radius must be positive");
    PotentialSpec p;
    p.name = "double_well";
    p.dim = d;
    p.params = {{"c", c}, {"radius", R}};
    p.value = [c](std::span<const double> x) {
        const double s = norm2(x);
        return 0.25 * (s - c) * (s - c) + 0.5 * s;
    };
    p.weak_grad = [c](std::span<const double> x, std::span<double> g) {
        const double f = norm2(x) - c + 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = f * x[i];
    };
    // <x, grad U> = (|x|^2 - c)|x|^2 + |x|^2 >= |x|^2 - c^2/4 (only binding when c > 0)
    p.m = 1.0;
    p.b = c > 0.0 ? 0.25 * c * c : 0.0;
    // Hessian eigenvalues |x|^2 - c + 1 and 3|x|^2 - c + 1 on the ball of radius R
    const double K = std::max({std::abs(3.0 * R * R - c + 1.0), std::abs(R * R - c + 1.0),
                               std::abs(1.0 - c), 1e-12});
    p.modulus = ModulusSpec::lipschitz(K);
    p.modulus_radius = R;
    p.grad_at_zero = 0.0;
    p.u0 = std::max(0.25 * c * c, 0.25 * (1.0 - c) * (1.0 - c) + 0.5);
    return p;
}

PotentialSpec make_hoelder_mix(int d, const Params& params) {
    reject_unknown(params, {"alpha"}, "hoelder_mix");
    const double alpha = param_or(params, "alpha", 0.5);
    if (!(alpha > 0.0) || !(alpha <= 1.0)) throw InputError("hoelder_mix: alpha must lie in (0, 1]");
    PotentialSpec p;
    p.name = "hoelder_mix";
    p.dim = d;
    p.params = {{"alpha", alpha}};
    p.value = [alpha](std::span<const double> x) {
        double s = 0.5 * norm2(x);
        for (double v : x) s += std::pow(std::abs(v), 1.0 + alpha) / (1.0 + alpha);
        return s;
    };
    p.weak_grad = [alpha](std::span<const double> x, std::span<double> g) {
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] + signed_pow(x[i], alpha);
    };
    p.m = 1.0;
    p.b = 0.0;
    p.modulus = ModulusSpec::hoelder(hoelder_mix_constant(d, alpha), alpha);
    p.grad_at_zero = 0.0;
    // sum |x_i|^{1+alpha} over the unit ball peaks at equal coordinates: d^{(1-alpha)/2}
    p.u0 = 0.5 + std::pow(static_cast<double>(d), 0.5 * (1.0 - alpha)) / (1.0 + alpha);
    return p;
}

PotentialSpec make_elastic_net(int d, const Params& params) {
    reject_unknown(params, {"lambda1", "lambda2", "shift"}, "elastic_net_logistic");
    const double l1 = param_or(params, "lambda1", 0.1);
    const double l2 = param_or(params, "lambda2", 1.0);
    const double shift = param_or(params, "shift", 1.0);
    if (!(l1 >= 0.0)) throw InputError("elastic_net_logistic: lambda1 must be nonnegative");
    if (!(l2 > 0.0)) throw InputError("elastic_net_logistic: lambda2 must be positive");
    PotentialSpec p;
    p.name = "elastic_net_logistic";
    p.dim = d;
    p.params = {{"lambda1", l1}, {"lambda2", l2}, {"shift", shift}};
    p.value = [l1, l2, shift](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += psi(v - shift) + l1 * std::abs(v);
        return s + 0.5 * l2 * norm2(x);
    };
    p.weak_grad = [l1, l2, shift](std::span<const double> x, std::span<double> g) {
        for (std::size_t i = 0; i < x.size(); ++i)
            g[i] = psi_prime(x[i] - shift) + l1 * sign0(x[i]) + l2 * x[i];
    };
    p.m = l2;
    p.b = d * std::max(0.0, -elastic_min_coordinate_term(l1, shift));
    const double K = l2 + kPsiCurvature;
    const double jump = 2.0 * l1 * std::sqrt(static_cast<double>(d));
    p.modulus = ModulusSpec::table({{0.0, jump}, {1.0, jump + K}});
    p.grad_at_zero = std::sqrt(static_cast<double>(d)) * std::abs(psi_prime(-shift));
    // psi decreasing and x_i >= -1 on the unit ball
    p.u0 = d * psi(-1.0 - shift) + l1 * std::sqrt(static_cast<double>(d)) + 0.5 * l2;
    return p;
}

}  // namespace

Vector PotentialSpec::grad(std::span<const double> x) const {
    Vector g(dim);
    weak_grad(x, g);
    return g;
}

std::vector<std::string> builtin_names() {
    return {"quadratic", "double_well", "hoelder_mix", "elastic_net_logistic"};
}

PotentialSpec builtin(const std::string& name, int dim, const Params& params) {
    if (dim < 1) throw InputError("builtin potential: dimension must be >= 1");
    if (name == "quadratic") {
        reject_unknown(params, {}, name);
        return make_quadratic(dim);
    }
    if (name == "double_well") return make_double_well(dim, params);
    if (name == "hoelder_mix") return make_hoelder_mix(dim, params);
    if (name == "elastic_net_logistic") return make_elastic_net(dim, params);
    throw InputError("unknown builtin potential '" + name + "'");
}

PotentialSpec FiniteSumPotential::aggregate() const {
    PotentialSpec p;
    p.name = name;
    p.dim = dim;
    p.params = params;
    auto comps = components;
    p.value = [comps](std::span<const double> x) {
        double s = 0.0;
        for (const auto& c : comps) s += c.value(x);
        return s;
    };
    const int d = dim;
    p.weak_grad = [comps, d](std::span<const double> x, std::span<double> g) {
        std::fill(g.begin(), g.end(), 0.0);
        Vector tmp(d);
        for (const auto& c : comps) {
            c.grad(x, tmp);
            for (int i = 0; i < d; ++i) g[i] += tmp[i];
        }
    };
    p.m = m;
    p.b = b;
    p.modulus = component_modulus;
    p.grad_at_zero = grad_at_zero;
    p.u0 = u0;
    return p;
}

FiniteSumPotential FiniteSumPotential::uniform_split(const PotentialSpec& p, std::size_t n) {
    if (n < 1) throw InputError("uniform_split: need at least one component");
    FiniteSumPotential f;
    f.name = p.name + "_split";
    f.dim = p.dim;
    f.params = p.params;
    const double w = 1.0 / static_cast<double>(n);
    Component c;
    c.value = [v = p.value, w](std::span<const double> x) { return w * v(x); };
    c.grad = [g = p.weak_grad, w](std::span<const double> x, std::span<double> out) {
        g(x, out);
        for (double& o : out) o *= w;
    };
    f.components.assign(n, c);
    f.m = p.m;
    f.b = p.b;
    f.component_modulus = p.modulus;
    f.grad_at_zero = p.grad_at_zero;
    f.u0 = p.u0;
    return f;
}

FiniteSumPotential builtin_finite_sum(const std::string& name, int dim, const Params& params) {
    if (name != "shifted_hoelder_sum")
        throw InputError("unknown finite-sum potential '" + name + "'");
    if (dim < 1) throw InputError("finite-sum potential: dimension must be >= 1");
    reject_unknown(params, {"alpha", "components", "spread", "seed"}, name);
    const double alpha = param_or(params, "alpha", 0.5);
    const double nd = param_or(params, "components", 16.0);
    const double spread = param_or(params, "spread", 0.5);
    const double seed = param_or(params, "seed", 7.0);
    if (!(alpha > 0.0) || !(alpha <= 1.0)) throw InputError(name + ": alpha must lie in (0, 1]");
    if (!(nd >= 1.0) || nd != std::floor(nd)) throw InputError(name + ": components must be a positive integer");
    if (!(spread >= 0.0)) throw InputError(name + ": spread must be nonnegative");
    const auto n = static_cast<std::size_t>(nd);

    Engine rng{stream_seed(static_cast<std::uint64_t>(seed), Stream::aux)};
    std::vector<Vector> centers(n, Vector(dim));
    for (auto& c : centers) {
        fill_gaussian(rng, c);
        for (double& v : c) v *= spread;
    }

    FiniteSumPotential f;
    f.name = name;
    f.dim = dim;
    f.params = {{"alpha", alpha}, {"components", nd}, {"spread", spread}, {"seed", seed}};
    const double w = 1.0 / static_cast<double>(n);
    double b_sum = 0.0, u0_sum = 0.0;
    Vector g0(dim, 0.0);
    for (const auto& c : centers) {
        Component comp;
        comp.value = [c, alpha, w](std::span<const double> x) {
            double s = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double t = x[j] - c[j];
                s += 0.5 * t * t + std::pow(std::abs(t), 1.0 + alpha) / (1.0 + alpha);
            }
            return w * s;
        };
        comp.grad = [c, alpha, w](std::span<const double> x, std::span<double> out) {
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double t = x[j] - c[j];
                out[j] = w * (t + signed_pow(t, alpha));
            }
        };
        f.components.push_back(std::move(comp));
        // <x, x - c + h(x - c)> >= |x|^2/2 - |c|^2/2 - sum_j |c_j|^{1+alpha}
        double cn2 = 0.0, cpow = 0.0, u0c = 0.0;
        for (int j = 0; j < dim; ++j) {
            cn2 += c[j] * c[j];
            cpow += std::pow(std::abs(c[j]), 1.0 + alpha);
            u0c += std::pow(1.0 + std::abs(c[j]), 1.0 + alpha) / (1.0 + alpha);
            g0[j] += w * (-c[j] + signed_pow(-c[j], alpha));
        }
        b_sum += 0.5 * cn2 + cpow;
        u0_sum += 0.5 * (1.0 + std::sqrt(cn2)) * (1.0 + std::sqrt(cn2)) + u0c;
    }
    f.m = 0.5;
    f.b = w * b_sum;
    f.component_modulus = ModulusSpec::hoelder(hoelder_mix_constant(dim, alpha), alpha);
    f.grad_at_zero = norm(g0);
    f.u0 = w * u0_sum;
    return f;
}

bool AssumptionReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const AssumptionCheck* AssumptionReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

constexpr double kRelTol = 1e-9;

// Radial log grid |x| in [1e-3, 1e2] with uniform random directions.
std::vector<Vector> radial_grid(int d, std::size_t n, Engine& rng, double r_max = 1e2) {
    std::vector<Vector> pts;
    pts.reserve(n);
    const double lo = -3.0, hi = std::log10(r_max);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        const double rad = std::pow(10.0, lo + (hi - lo) * t);
        Vector x(d);
        uniform_direction(rng, x);
        for (double& v : x) v *= rad;
        pts.push_back(std::move(x));
    }
    return pts;
}

struct MarginTracker {
    AssumptionCheck check;
    explicit MarginTracker(std::string name) {
        check.name = std::move(name);
        check.worst_margin = std::numeric_limits<double>::infinity();
    }
    void add(double lhs, double rhs, double scale) {
        const double margin = lhs - rhs;
        check.worst_margin = std::min(check.worst_margin, margin);
        ++check.samples;
        if (margin < -kRelTol * (1.0 + std::abs(scale))) check.passed = false;
    }
};

AssumptionCheck check_dissipativity(const ValueFn&, const GradFn& grad, int d, double m, double b,
                                    const std::vector<Vector>& pts) {
    MarginTracker t("dissipativity");
    Vector g(d);
    for (const auto& x : pts) {
        grad(x, g);
        const double rhs = m * norm2(x) - b;
        t.add(dot(x, g), rhs, m * norm2(x) + b);
    }
    t.check.detail = "<x, grad U(x)> >= m|x|^2 - b";
    return t.check;
}

// Pairs (x, x + delta u) with delta log-uniform in [1e-3, 10] and |x| log-uniform up to
// 1e2, or, for a ball-restricted modulus, both endpoints inside that ball.
template <class GradPair>
AssumptionCheck check_modulus(const std::string& name, int d, const ModulusSpec& modulus,
                              double scale, std::optional<double> radius, std::size_t n,
                              Engine& rng, GradPair&& grad_diff) {
    MarginTracker t(name);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double r_max = radius ? *radius : 1e2;
    Vector x(d), y(d), u(d);
    std::size_t attempts = 0;
    while (t.check.samples < n && attempts < 50 * n) {
        ++attempts;
        const double delta = std::pow(10.0, -3.0 + 4.0 * unif(rng));
        const double rad = std::pow(10.0, -3.0 + (std::log10(r_max) + 3.0) * unif(rng));
        uniform_direction(rng, x);
        for (double& v : x) v *= rad;
        uniform_direction(rng, u);
        for (int j = 0; j < d; ++j) y[j] = x[j] + delta * u[j];
        if (radius && norm(y) > *radius) continue;
        double dist2 = 0.0;
        for (int j = 0; j < d; ++j) dist2 += (x[j] - y[j]) * (x[j] - y[j]);
        if (dist2 == 0.0) continue;
        const double bound = scale * modulus.eval(std::sqrt(dist2));
        t.add(bound, grad_diff(x, y), bound);
    }
    t.check.detail = radius ? "modulus checked on the declared ball only" : "";
    return t.check;
}

}  // namespace

AssumptionReport check_assumptions(const PotentialSpec& p, std::size_t n_samples, Engine& rng) {
    if (n_samples < 1) throw InputError("check_assumptions: n_samples must be >= 1");
    const int d = p.dim;
    AssumptionReport report;
    const auto pts = radial_grid(d, n_samples, rng);

    MarginTracker nonneg("nonnegativity");
    MarginTracker lower("quadratic_lower_bound");
    for (const auto& x : pts) {
        const double u = p.value(x);
        nonneg.add(u, 0.0, 0.0);
        const double rhs = p.m / 3.0 * norm2(x) - 0.5 * p.b * std::log(3.0);
        lower.add(u, rhs, u);
    }
    nonneg.check.detail = "U(x) >= 0";
    lower.check.detail = "U(x) >= m/3 |x|^2 - b/2 log 3";
    report.checks.push_back(nonneg.check);
    report.checks.push_back(check_dissipativity(p.value, p.weak_grad, d, p.m, p.b, pts));
    report.checks.push_back(lower.check);

    Vector gx(d), gy(d);
    report.checks.push_back(check_modulus(
        "gradient_modulus", d, p.modulus, 1.0, p.modulus_radius, n_samples, rng,
        [&](const Vector& x, const Vector& y) {
            p.weak_grad(x, gx);
            p.weak_grad(y, gy);
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += (gx[j] - gy[j]) * (gx[j] - gy[j]);
            return std::sqrt(s);
        }));

    MarginTracker g0("grad_at_zero");
    Vector zero(d, 0.0);
    p.weak_grad(zero, gx);
    g0.add(p.grad_at_zero, norm(gx), p.grad_at_zero);
    g0.check.detail = "declared |grad U(0)| >= evaluated";
    report.checks.push_back(g0.check);

    MarginTracker u0("u0_upper_bound");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vector x(d);
    for (std::size_t i = 0; i < n_samples; ++i) {
        uniform_direction(rng, x);
        const double rad = i % 4 == 0 ? 1.0 - 1e-12 : std::pow(unif(rng), 1.0 / d);
        for (double& v : x) v *= rad;
        u0.add(p.u0, p.value(x), p.u0);
    }
    u0.check.detail = "declared U0 >= sampled U on B_1(0)";
    report.checks.push_back(u0.check);
    return report;
}

AssumptionReport check_assumptions(const FiniteSumPotential& f, std::size_t n_samples,
                                   Engine& rng) {
    if (n_samples < 1) throw InputError("check_assumptions: n_samples must be >= 1");
    if (f.components.empty()) throw InputError("check_assumptions: finite sum has no components");
    const auto agg = f.aggregate();
    AssumptionReport report = check_assumptions(agg, n_samples, rng);
    // the aggregate modulus row is implied by the per-component one below
    std::erase_if(report.checks, [](const auto& c) { return c.name == "gradient_modulus"; });

    const int d = f.dim;
    const double inv_n = 1.0 / static_cast<double>(f.size());
    std::uniform_int_distribution<std::size_t> pick(0, f.size() - 1);
    Vector gx(d), gy(d);
    report.checks.push_back(check_modulus(
        "component_gradient_modulus", d, f.component_modulus, inv_n, std::nullopt, n_samples, rng,
        [&](const Vector& x, const Vector& y) {
            const auto& c = f.components[pick(rng)];
            c.grad(x, gx);
            c.grad(y, gy);
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += (gx[j] - gy[j]) * (gx[j] - gy[j]);
            return std::sqrt(s);
        }));
    return report;
}

}  // namespace langevin
