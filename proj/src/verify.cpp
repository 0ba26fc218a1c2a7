#include "langevin/verify.hpp"

#include "langevin/bounds.hpp"
#include "langevin/errors.hpp"
#include "langevin/metrics.hpp"
#include "langevin/mollifier.hpp"
#include "langevin/planner.hpp"
#include "langevin/potentials.hpp"
#include "langevin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace langevin {

using nlohmann::json;

namespace {

class Battery {
public:
    void check(const std::string& name, bool ok, const std::string& detail = {}) {
        checks_.push_back({{"name", name}, {"passed", ok}, {"detail", detail}});
        passed_ = passed_ && ok;
    }
    void close(const std::string& name, double got, double want, double tol) {
        std::ostringstream os;
        os.precision(15);
        os << "got " << got << ", want " << want << ", tol " << tol;
        check(name, std::abs(got - want) <= tol, os.str());
    }
    json finish(const std::string& suite) const {
        return {{"suite", suite}, {"passed", passed_}, {"checks", checks_}};
    }

private:
    json checks_ = json::array();
    bool passed_ = true;
};

void mollifier_suite(Battery& b, Engine& rng) {
    for (int d = 1; d <= 3; ++d) {
        const std::string tag = "d=" + std::to_string(d);
        Mollifier k(d, 1.0);
        double mass = integrate_unit_ball(d, [&](std::span<const double> x) { return k.density(x); });
        b.close("mass " + tag, mass, 1.0, 1e-6);
        double l1 = integrate_unit_ball(d, [&](std::span<const double> x) { return norm(k.grad_density(x)); });
        b.close("grad L1 " + tag, l1, grad_l1_norm(d), 1e-4);

        Mollifier kr(d, 0.3);
        double mass_r = integrate_unit_ball(d, [&](std::span<const double> x) {
            Vector y(x.begin(), x.end());
            for (auto& v : y) v *= 0.3;
            return kr.density(y) * std::pow(0.3, d);
        });
        b.close("scaled mass " + tag, mass_r, 1.0, 1e-6);

        const std::size_t n = 20000;
        double s = 0, s2 = 0, max_norm = 0;
        Vector z(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < n; ++i) {
            k.sample(rng, z);
            double q = norm2(z);
            s += q;
            s2 += q * q;
            max_norm = std::max(max_norm, std::sqrt(q));
        }
        double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
        b.close("sample E|z|^2 " + tag, mean, d / (d + 8.0), 4 * se);
        b.check("sample support " + tag, max_norm <= 1.0);

        Vector x(static_cast<std::size_t>(d), 0.0), e(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.2 + 0.1 * i;
        auto g = k.grad_density(x);
        double worst = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            Vector xp = x, xm = x;
            xp[i] += 1e-6;
            xm[i] -= 1e-6;
            double fd = (k.density(xp) - k.density(xm)) / 2e-6;
            worst = std::max(worst, std::abs(fd - g[i]));
        }
        b.close("grad vs finite difference " + tag, worst, 0.0, 1e-6);
        Vector out(static_cast<std::size_t>(d), 0.0);
        out[0] = 1.0 + 1e-9;
        b.check("vanishes outside the ball " + tag, k.density(out) == 0.0);
    }
    b.close("peak d=1", Mollifier(1, 1.0).density(Vector{0.0}), 35.0 / 32.0, 1e-9);
    bool bracket = true;
    for (int d = 1; d <= 100; ++d) bracket = bracket && grad_l1_norm(d) >= d && grad_l1_norm(d) <= d + 4;
    b.check("d <= grad L1 <= d+4 up to d=100", bracket);
}

void potential_suite(Battery& b, Engine& rng) {
    for (const auto& name : builtin_names()) {
        for (int d : {1, 2, 3}) {
            auto p = builtin(name, d);
            auto rep = check_assumptions(p, 400, rng);
            for (const auto& c : rep.checks)
                b.check(name + " d=" + std::to_string(d) + " " + c.name, c.passed, c.detail);
        }
    }
    for (int d : {1, 2}) {
        auto f = builtin_finite_sum("shifted_hoelder_sum", d);
        auto rep = check_assumptions(f, 400, rng);
        for (const auto& c : rep.checks)
            b.check("shifted_hoelder_sum d=" + std::to_string(d) + " " + c.name, c.passed, c.detail);
    }
}

double enumerate_w2(const SampleSet& a, const SampleSet& c) {
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = INFINITY;
    do {
        double s = 0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            auto x = a.point(i), y = c.point(perm[i]);
            for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
        }
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::sqrt(best / a.size());
}

SampleSet random_set(int d, std::size_t n, Engine& rng) {
    std::vector<double> pts(n * d);
    fill_gaussian(rng, pts);
    return SampleSet(d, std::move(pts));
}

void metrics_suite(Battery& b, Engine& rng) {
    double worst_1d = 0, worst_enum = 0, worst_sym = 0, worst_shift = 0, worst_scale = 0;
    bool triangle = true;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const int d = 1 + trial % 3;
        auto a = random_set(d, n, rng), c = random_set(d, n, rng), e = random_set(d, n, rng);
        double ac = w2_exact(a, c);
        worst_enum = std::max(worst_enum, std::abs(ac - enumerate_w2(a, c)));
        worst_sym = std::max(worst_sym, std::abs(ac - w2_exact(c, a)));
        triangle = triangle && ac <= w2_exact(a, e) + w2_exact(e, c) + 1e-12;
        if (d == 1) worst_1d = std::max(worst_1d, std::abs(ac - w2_1d(a, c)));
        SampleSet shifted = a;
        Vector shift(static_cast<std::size_t>(d));
        fill_gaussian(rng, shift);
        for (std::size_t i = 0; i < shifted.points.size(); ++i) shifted.points[i] += shift[i % d];
        worst_shift = std::max(worst_shift, std::abs(w2_exact(a, shifted) - norm(shift)));
        SampleSet sa = a, sc = c;
        for (auto& v : sa.points) v *= 2.5;
        for (auto& v : sc.points) v *= 2.5;
        worst_scale = std::max(worst_scale, std::abs(w2_exact(sa, sc) - 2.5 * ac));
    }
    b.close("assignment matches enumeration", worst_enum, 0, 1e-12);
    b.close("w2_1d matches w2_exact", worst_1d, 0, 1e-12);
    b.close("symmetry", worst_sym, 0, 1e-12);
    b.check("triangle inequality", triangle);
    b.close("translation identity", worst_shift, 0, 1e-12);
    b.close("scale equivariance", worst_scale, 0, 1e-12);
    SampleSet a(1, {0.0, 1.0}), c(1, {1.0, 2.0});
    b.close("two-point example", w2_exact(a, c), 1.0, 1e-15);
    auto x = random_set(3, 200, rng), y = random_set(3, 200, rng);
    b.check("sliced below exact", w2_sliced(x, y, 200, rng) <= w2_exact(x, y) + 1e-12);
}

BoundInputs unit_inputs() {
    BoundInputs in;
    in.d = 1;
    in.beta = 1;
    in.m = 1;
    in.b = 0;
    in.m_tilde = 1;
    in.b_tilde = 0;
    in.kappa0 = 1;
    in.grad_u_mnorm = 0;
    in.g_tilde_mnorm = 1;
    in.omega_grad_u = ModulusSpec::lipschitz(1.0);
    in.omega_g_tilde_one = 1;
    in.u0 = 0;
    in.a_abs = 1;
    return in;
}

void bounds_suite(Battery& b) {
    BoundInputs in = unit_inputs();
    b.close("poincare example", static_cast<double>(poincare_bound(in)), 18.0, 1e-12);
    b.close("log-Sobolev example", static_cast<double>(log_sobolev_bound(in, 1.0)), 2356.4, 1e-9);
    b.close("kappa_inf example", static_cast<double>(kappa_inf(in, 0.1)), 3.2, 1e-12);
    b.close("C0 example", static_cast<double>(c0_constant(in, 0.1)), 9.5, 1e-12);
    BoundInputs c1 = in;
    c1.beta = 4;
    b.close("C1 example", static_cast<double>(theorem_bound(c1, 1.0, 0.1, 10).c1), 2 * std::sqrt(54.0), 1e-12);
    b.close("kl_gibbs example", static_cast<double>(kl_gibbs(in, 0.1, 0.0, 1.0)), 0.2, 1e-15);
    b.close("w2_from_kl example", static_cast<double>(w2_from_kl(2, 1)), std::sqrt(2.0) + 1, 1e-15);
    BoundInputs em = in;
    em.m = 2;
    em.beta = 4;
    b.close("exp moment asymptote", static_cast<double>(exp_moment_bound(em, 1e6, 1.0, 2.0)),
            2 * std::exp(6.0), 1e-9);
    PlanRequest req;
    Plan p = plan_lmc(req);
    b.check("lipschitz plan k=57", p.k == 57, "k=" + std::to_string(static_cast<double>(p.k)));
    b.close("lipschitz plan eta", static_cast<double>(p.eta), std::sqrt(1.0 / 912), 1e-15);
    b.check("lipschitz plan verifies", verify_plan(p, req).ok);
}

}  // namespace

std::vector<std::string> suite_names() { return {"mollifier", "potential", "metrics", "bounds"}; }

json run_suite(const std::string& suite, std::uint64_t seed) {
    Battery b;
    Engine rng = make_engine(seed, Stream::aux);
    if (suite == "mollifier")
        mollifier_suite(b, rng);
    else if (suite == "potential")
        potential_suite(b, rng);
    else if (suite == "metrics")
        metrics_suite(b, rng);
    else if (suite == "bounds")
        bounds_suite(b);
    else
        throw InputError("unknown verify suite: " + suite);
    return b.finish(suite);
}

}  // namespace langevin
