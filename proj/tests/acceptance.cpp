#include "langevin/bounds.hpp"
#include "langevin/config.hpp"
#include "langevin/errors.hpp"
#include "langevin/metrics.hpp"
#include "langevin/mollifier.hpp"
#include "langevin/planner.hpp"
#include "langevin/potentials.hpp"
#include "langevin/quadrature.hpp"
#include "langevin/samplers.hpp"
#include "langevin/trace_io.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

using namespace langevin;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct MeanSe {
    double mean = 0, se = 0;
};

MeanSe mean_se(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double s = 0;
    for (double x : v) s += x;
    const double mu = s / n;
    double q = 0;
    for (double x : v) q += (x - mu) * (x - mu);
    return {mu, std::sqrt(q / (n - 1) / n)};
}

std::size_t threads() {
    if (const char* t = std::getenv("LANGEVIN_THREADS")) return std::strtoul(t, nullptr, 10);
    return 0;
}

// ---------------------------------------------------------------------------

Outcome mollifier_mass() {
    Outcome out;
    for (int d = 1; d <= 3; ++d) {
        Mollifier k(d, 1.0);
        double mass = integrate_unit_ball(d, [&](std::span<const double> x) { return k.density(x); });
        out.require(std::abs(mass - 1) < 1e-6, fmt("d=%d mass %.12f", d, mass));
        out.note(fmt("d=%d |mass-1|=%.1e", d, std::abs(mass - 1)));
    }
    Mollifier k1(1, 1.0);
    const double zero[1] = {0.0};
    const double peak = k1.density(zero);
    out.require(std::abs(peak - 35.0 / 32) < 1e-9, fmt("peak %.15f", peak));
    out.note(fmt("peak-35/32=%.1e", peak - 35.0 / 32));
    return out;
}

Outcome gradient_l1() {
    Outcome out;
    for (int d = 1; d <= 3; ++d) {
        Mollifier k(d, 1.0);
        Vector g(d);
        double q = integrate_unit_ball(d, [&](std::span<const double> x) {
            k.grad_density(x, g);
            return norm(g);
        });
        const double dd = d;
        const double want = (dd + 6) * (dd + 4) * (dd + 2) * dd / ((dd + 5) * (dd + 3) * (dd + 1));
        out.require(std::abs(q - want) < 1e-4, fmt("d=%d quadrature %.8f vs %.8f", d, q, want));
        out.note(fmt("d=%d err %.1e", d, std::abs(q - want)));
    }
    double worst = 0;
    for (int d = 1; d <= 100; ++d) {
        const double v = grad_l1_norm(d);
        out.require(v >= d && v <= d + 4, fmt("d=%d value %.6f outside [d, d+4]", d, v));
        worst = std::max(worst, std::abs(v / oracle::kernel_grad_l1(d) - 1));
    }
    out.require(worst < 1e-8, fmt("closed form vs radial quadrature rel err %.1e", worst));
    out.note(fmt("d<=100 in [d,d+4], closed form vs quadrature %.1e", worst));
    return out;
}

Outcome mollifier_sampler() {
    Outcome out;
    const std::size_t n = 100000;
    for (int d : {1, 3, 10}) {
        Mollifier k(d, 1.0);
        Engine rng(1000 + d);
        Vector z(d);
        std::vector<double> s(n);
        for (auto& v : s) {
            k.sample(rng, z);
            v = norm2(z);
        }
        const double ks = oracle::ks_statistic(s, [d](double x) { return oracle::beta_cdf(d / 2.0, 4, x); });
        auto m = mean_se(s);
        const double want = d / (d + 8.0);
        out.require(oracle::ks_passes_1pct(ks, n), fmt("d=%d KS %.4f rejects", d, ks));
        out.require(std::abs(m.mean - want) < 3 * m.se,
                    fmt("d=%d mean %.5f vs %.5f (se %.1e)", d, m.mean, want, m.se));
        out.note(fmt("d=%d KS %.4f, mean z=%.2f", d, ks, (m.mean - want) / m.se));
    }
    return out;
}

Outcome lmc_variance() {
    Outcome out;
    const double beta = 1, eta = 0.01;
    const double want = 2 / (beta * (2 - eta));
    const std::size_t burn = 2000;
    for (int d : {1, 5}) {
        ChainConfig cfg;
        cfg.beta = beta;
        cfg.eta = eta;
        cfg.steps = 10000;
        cfg.stride = 10;
        cfg.seed = 4000 + d;
        auto traces = run_replicas(GradientOracle::exact(builtin("quadratic", d)), cfg, 1000, threads());
        double s = 0, q = 0;
        std::size_t cnt = 0;
        std::vector<double> per_chain;
        for (const auto& t : traces) {
            out.require(!t.diverged, "chain diverged");
            double cs = 0;
            std::size_t cc = 0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t.steps[i] < burn) continue;
                for (double v : t.point(i)) {
                    s += v;
                    q += v * v;
                    cs += v * v;
                    ++cc;
                }
            }
            cnt += cc;
            per_chain.push_back(cs / cc);
        }
        const double mu = s / cnt, var = q / cnt - mu * mu;
        const auto chain_se = mean_se(per_chain).se;
        out.require(std::abs(var / want - 1) < 0.02, fmt("d=%d variance %.5f vs %.5f", d, var, want));
        out.note(fmt("d=%d var %.5f (target %.5f, rel %.2f%%, se %.2f%%)", d, var, want,
                     100 * (var / want - 1), 100 * chain_se / want));
    }
    return out;
}

Outcome ss_gradient_stats() {
    Outcome out;
    const std::size_t calls = 100000;
    for (int d : {1, 3}) {
        Vector x(d);
        for (int i = 0; i < d; ++i) x[i] = 0.3 - 0.5 * i;
        for (auto [r, nb] : {std::pair{0.5, 1}, {0.5, 4}, {1.0, 16}}) {
            auto o = GradientOracle::smoothed(builtin("quadratic", d), r, nb);
            auto streams = SmoothingStreams::for_chain(7000 + d * 100 + nb);
            Vector g(d);
            std::vector<std::vector<double>> comp(d, std::vector<double>(calls));
            std::vector<double> sq(calls);
            for (std::size_t c = 0; c < calls; ++c) {
                o.evaluate(x, streams, g);
                double e = 0;
                for (int i = 0; i < d; ++i) {
                    comp[i][c] = g[i];
                    e += (g[i] - x[i]) * (g[i] - x[i]);
                }
                sq[c] = e;
            }
            double worst = 0;
            for (int i = 0; i < d; ++i) {
                auto m = mean_se(comp[i]);
                worst = std::max(worst, std::abs(m.mean - x[i]) / m.se);
            }
            auto v = mean_se(sq);
            const double want = r * r * d / ((d + 8.0) * nb);
            out.require(worst < 3, fmt("d=%d r=%g N_B=%d bias %.2f se", d, r, nb, worst));
            out.require(std::abs(v.mean - want) < 3 * v.se,
                        fmt("d=%d r=%g N_B=%d variance %.3e vs %.3e", d, r, nb, v.mean, want));
            out.note(fmt("d=%d (%g,%d) bias %.1f se, var %.1f se", d, r, nb, worst, (v.mean - want) / v.se));
        }
    }
    return out;
}

struct Configured {
    std::string label;
    GradientOracle oracle;
    ChainConfig cfg;
    double r;
};

Outcome moment_envelopes() {
    Outcome out;
    auto base = [](double eta, std::size_t steps, std::uint64_t seed) {
        ChainConfig c;
        c.beta = 1;
        c.eta = eta;
        c.steps = steps;
        c.stride = steps / 10;
        c.seed = seed;
        return c;
    };
    std::vector<Configured> runs = {
        {"lmc quadratic d=1", GradientOracle::exact(builtin("quadratic", 1)), base(0.01, 2000, 61), 0.1},
        {"lmc quadratic d=5", GradientOracle::exact(builtin("quadratic", 5)), base(0.01, 2000, 62), 0.1},
        {"ss_lmc hoelder_mix d=1", GradientOracle::smoothed(builtin("hoelder_mix", 1, {{"alpha", 0.5}}), 0.05, 4),
         base(1e-3, 5000, 63), 0.05},
        {"ss_lmc hoelder_mix d=3", GradientOracle::smoothed(builtin("hoelder_mix", 3, {{"alpha", 0.7}}), 0.1, 2),
         base(1e-3, 5000, 64), 0.1},
        {"lmc elastic_net_logistic d=2", GradientOracle::exact(builtin("elastic_net_logistic", 2)),
         base(1e-3, 5000, 65), 0.1},
    };
    const std::size_t replicas = 200;
    for (const auto& run_cfg : runs) {
        auto in = make_bound_inputs(run_cfg.oracle, run_cfg.cfg, run_cfg.r);
        const double kinf = static_cast<double>(kappa_inf(in, run_cfg.cfg.eta));
        auto traces = run_replicas(run_cfg.oracle, run_cfg.cfg, replicas, threads());
        double worst = -INFINITY;
        for (std::size_t i = 0; i < traces[0].size(); ++i) {
            std::vector<double> sq;
            for (const auto& t : traces) sq.push_back(norm2(t.point(i)));
            auto m = mean_se(sq);
            out.require(m.mean <= kinf + 5 * m.se,
                        fmt("%s step %zu: E|Y|^2 %.3f > kappa_inf %.3f", run_cfg.label.c_str(),
                            traces[0].steps[i], m.mean, kinf));
            worst = std::max(worst, m.mean / kinf);
        }
        out.note(fmt("%s max E|Y|^2/kappa_inf %.3f", run_cfg.label.c_str(), worst));
    }
    for (int d : {1, 5}) {
        const auto& run_cfg = runs[d == 1 ? 0 : 1];
        auto in = make_bound_inputs(run_cfg.oracle, run_cfg.cfg, run_cfg.r);
        const double alpha = default_exp_alpha(in.beta, in.m);
        const double init = gaussian_exp_sq_moment(d, 1.0, alpha);
        const double asymptote = static_cast<double>(exp_moment_bound(in, 1e9, alpha, init));
        auto traces = run_replicas(run_cfg.oracle, run_cfg.cfg, replicas, threads());
        double worst = 0;
        for (std::size_t i = 0; i < traces[0].size(); ++i) {
            std::vector<double> e;
            for (const auto& t : traces) e.push_back(std::exp(alpha * norm2(t.point(i))));
            auto m = mean_se(e);
            const double t_now = traces[0].steps[i] * run_cfg.cfg.eta;
            const double env = static_cast<double>(exp_moment_bound(in, t_now, alpha, init));
            out.require(m.mean <= env + 5 * m.se, fmt("d=%d step %zu: exp-moment %.3f > envelope %.3f", d,
                                                      traces[0].steps[i], m.mean, env));
            if (traces[0].steps[i] > 0)
                out.require(m.mean <= asymptote + 5 * m.se,
                            fmt("d=%d exp-moment %.3f > asymptote %.3f", d, m.mean, asymptote));
            worst = std::max(worst, m.mean / asymptote);
        }
        out.note(fmt("quadratic d=%d exp-moment/asymptote max %.3g", d, worst));
    }
    return out;
}

Outcome planner_fidelity() {
    Outcome out;
    PlanRequest base;
    auto p = plan_lmc(base);
    const long double eta_want = std::sqrt(1.0L / 912);
    out.require(p.k == 57, fmt("k = %.0Lf", p.k));
    out.require(std::abs(p.eta / eta_want - 1) < 1e-15L, fmt("eta = %.17Lg", p.eta));
    int plans = 0;
    long double worst_eq = 0;
    for (double eps : {0.5, 1.0})
        for (int d : {1, 2}) {
            std::vector<std::pair<Plan, PlanRequest>> grid;
            for (double a : {0.4, 0.7, 1.0}) {
                PlanRequest q;
                q.epsilon = eps;
                q.d = d;
                q.alpha = a;
                grid.emplace_back(plan_lmc(q), q);
            }
            PlanRequest q;
            q.epsilon = eps;
            q.d = d;
            grid.emplace_back(plan_ss_sg_lmc(q), q);
            for (const auto& [plan, req] : grid) {
                ++plans;
                auto rep = verify_plan(plan, req);
                out.require(rep.ok, fmt("%s eps=%g d=%d alpha=%g fails %s", plan.branch.c_str(), eps, d,
                                        req.alpha, rep.failure.c_str()));
                if (plan.branch == "holder_low" || plan.branch == "holder_high") {
                    const long double a = req.alpha, dd = d;
                    const long double lhs = dd * dd * std::pow(*plan.r, a - 1) * plan.k * plan.eta * plan.eta;
                    const long double rhs = std::pow(static_cast<long double>(eps), 4) / (48 * dd * dd);
                    const long double rel = std::abs(lhs / rhs - 1);
                    worst_eq = std::max(worst_eq, rel);
                    out.require(!plan.eta_capped, "eta capped on the grid");
                    out.require(rel < 1e-9L, fmt("eps=%g d=%d alpha=%g ratio-1 %.3Le", eps, d, req.alpha, rel));
                }
            }
        }
    out.note(fmt("k=57, eta=sqrt(1/912); %d plans verified; Hoelder schedule equality rel %.1Le", plans, worst_eq));
    return out;
}

// W2 bound constants evaluated from scratch; shares no code with the library.
struct HandBound {
    long double kinf, c0, c1, c1p, c2, cp, cls, f, total;
};

HandBound hand_theorem(int d_, double beta_, double m_, double b_, double mt_, double bt_, double k0_,
                       double p0log_, double gu_, double gt_, double omega_c, double omega_a,
                       double wgt1_, double u0_, double dlt[4], double a_, double r_, double eta_,
                       double k_) {
    using L = long double;
    const L d = d_, beta = beta_, m = m_, b = b_, mt = mt_, bt = bt_, k0 = k0_, gu = gu_, gt = gt_;
    const L w1 = omega_c, wr = omega_c * std::pow(static_cast<L>(r_), static_cast<L>(omega_a));
    const L wgt1 = wgt1_, u0 = u0_, a = a_, r = r_, eta = eta_, k = k_;
    const L v0 = dlt[2], v2 = dlt[3];
    const L r0 = dlt[0] + v0, r2 = dlt[1] + v2;
    HandBound h{};
    h.kinf = k0 + 2 * std::max<L>(1, 1 / mt) * (bt + eta * gt * gt + v0 + d / beta);
    h.c0 = (d + 4) * (beta / 3 * (v0 + gt * gt + (wgt1 * wgt1 + v2) * h.kinf) + d / 2);
    const L tail = 32 * (b + m + d / beta) / m + 10 / std::min<L>(1, beta * m / 4);
    h.c1 = 2 * std::sqrt(4 * k0 + tail);
    h.c1p = 2 * std::sqrt(tail);
    const L inner = p0log_ + d / 2 * std::log(3 * M_PIl / (m * beta)) +
                    beta * (w1 / 2 * k0 + 2.5L * gu * std::sqrt(k0) + u0 + b / 2 * std::log(3.0L));
    h.c2 = std::sqrt(inner);
    const L s = d + (b + m) * beta;
    h.cp = 4 / (m * beta * s) +
           8 * a * s / (m * beta) * std::exp(beta * (25.0L / 16 * gu * (1 + 8 * s / (m * beta)) + u0));
    const L lead = (d + 4) * wr / r;
    h.cls = lead * (32 / (m * m * beta * beta) + 12 * s * h.cp / (m * beta)) + 2 * r / ((d + 4) * wr) + 2 * h.cp;
    h.f = (h.c0 * wr / r * eta + beta * (r2 * h.kinf + r0)) * k * eta +
          beta * r * gu / 2 * (3 + std::sqrt((b + d / beta) / m));
    h.total = 2 * h.c1 * (std::sqrt(h.f) + std::pow(h.f, 0.25L)) +
              h.c1p * std::sqrt(h.c2 + std::sqrt(h.c2)) * std::exp(-k * eta / (2 * beta * h.cls));
    return h;
}

Outcome bounds_oracle() {
    Outcome out;
    BoundInputs in;
    in.d = 2;
    in.beta = 2;
    in.m = 1;
    in.b = 0.5;
    in.m_tilde = 0.5;
    in.b_tilde = 1.5;
    in.kappa0 = 1.4989647520539797;
    in.p0_sup_log = -std::log(2 * M_PI);
    in.grad_u_mnorm = 1.3;
    in.g_tilde_mnorm = 2.5;
    in.omega_grad_u = ModulusSpec::hoelder(1.2, 0.5);
    in.omega_g_tilde_one = 0.9;
    in.u0 = 0.7;
    in.delta = {0.01, 0.02, 0.03, 0.04};
    in.a_abs = 0.5;
    double dl[4] = {0.01, 0.02, 0.03, 0.04};
    const double r = 0.3, eta = 0.05, k = 2000;
    auto tb = theorem_bound(in, r, eta, k);
    auto h = hand_theorem(2, 2, 1, 0.5, 0.5, 1.5, in.kappa0, in.p0_sup_log, 1.3, 2.5, 1.2, 0.5, 0.9, 0.7, dl,
                          0.5, r, eta, k);
    long double worst = 0;
    auto cmp = [&](const char* name, long double lib, long double ref) {
        const long double rel = std::abs(lib / ref - 1);
        worst = std::max(worst, rel);
        out.require(rel <= 1e-12L, fmt("%s %.18Lg vs %.18Lg", name, lib, ref));
    };
    cmp("kappa_inf", tb.kappa_inf, h.kinf);
    cmp("C0", tb.c0, h.c0);
    cmp("C1", tb.c1, h.c1);
    cmp("C1'", tb.c1_prime, h.c1p);
    out.require(tb.c2.has_value(), "C2 undefined");
    if (tb.c2) cmp("C2", *tb.c2, h.c2);
    cmp("c_P", tb.c_p_bound, h.cp);
    cmp("c_LS", tb.c_ls_bound, h.cls);
    cmp("f", tb.f_value, h.f);
    out.require(tb.w2_bound.has_value(), "total undefined");
    if (tb.w2_bound) cmp("total", *tb.w2_bound, h.total);

    BoundInputs ex;
    ex.d = 1;
    ex.beta = 1;
    ex.m = 1;
    ex.b = 0;
    ex.a_abs = 1;
    ex.grad_u_mnorm = 0;
    ex.u0 = 0;
    const long double cp = poincare_bound(ex);
    out.require(cp == 18.0L || std::abs(cp - 18) < 1e-15L, fmt("Poincare example %.20Lg", cp));
    out.note(fmt("max rel diff %.1Le over 9 quantities; Poincare example %.17Lg", worst, cp));
    return out;
}

SampleSet random_set(Engine& rng, int d, std::size_t n, double scale = 1) {
    std::vector<double> p(n * d);
    fill_gaussian(rng, p);
    for (auto& v : p) v *= scale;
    return SampleSet(d, std::move(p));
}

Outcome w2_estimators() {
    Outcome out;
    Engine rng(9090);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + i % 8;
        auto a = random_set(rng, 1, n), b = random_set(rng, 1, n, 2);
        const double ref = oracle::w2_enumerate(a.points, b.points, 1);
        const double e1 = w2_1d(a, b), e2 = w2_exact(a, b);
        worst = std::max({worst, std::abs(e1 - ref), std::abs(e2 - ref), std::abs(e1 - e2)});
    }
    out.require(worst < 1e-12, fmt("1-D vs exact vs enumeration diff %.1e", worst));
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
        const int d = 1 + i % 4;
        const std::size_t n = 2 + i % 7;
        auto a = random_set(rng, d, n), b = random_set(rng, d, n), c = random_set(rng, d, n);
        const double ab = w2_exact(a, b);
        if (std::abs(ab - w2_exact(b, a)) > 1e-12) ++violations;
        if (ab > w2_exact(a, c) + w2_exact(c, b) + 1e-12) ++violations;
        Vector shift(d);
        fill_gaussian(rng, shift);
        SampleSet moved = a, sa = a, sb = b;
        for (std::size_t j = 0; j < moved.points.size(); ++j) moved.points[j] += shift[j % d];
        if (std::abs(w2_exact(a, moved) - norm(shift)) > 1e-10 * (1 + norm(shift))) ++violations;
        const double lambda = 0.5 + i % 5;
        for (auto& v : sa.points) v *= lambda;
        for (auto& v : sb.points) v *= lambda;
        if (std::abs(w2_exact(sa, sb) - lambda * ab) > 1e-12 * (1 + lambda * ab)) ++violations;
    }
    out.require(violations == 0, fmt("%d metric property violations", violations));
    out.note(fmt("max diff %.1e on 100 instances; 400 property checks", worst));
    return out;
}

// Last `keep` recorded points of each trace, pooled.
std::vector<double> tail_points(const std::vector<Trace>& traces, std::size_t keep) {
    std::vector<double> v;
    for (const auto& t : traces) {
        if (t.diverged || t.size() < keep) throw std::runtime_error("reference or sampler chain too short");
        for (std::size_t i = t.size() - keep; i < t.size(); ++i) v.push_back(t.point(i)[0]);
    }
    return v;
}

struct W2Estimate {
    double pooled;
    MeanSe blocks;
};

// Pooled 1-D W2 and per-replica block distances against the matching reference block.
W2Estimate w2_against(const std::vector<double>& xs, const std::vector<double>& ref, std::size_t block) {
    W2Estimate e{};
    e.pooled = w2_1d(SampleSet(1, xs), SampleSet(1, ref));
    std::vector<double> per;
    for (std::size_t s = 0; s + block <= xs.size(); s += block) {
        std::vector<double> a(xs.begin() + s, xs.begin() + s + block);
        std::vector<double> b(ref.begin() + s, ref.begin() + s + block);
        per.push_back(w2_1d(SampleSet(1, a), SampleSet(1, b)));
    }
    e.blocks = mean_se(per);
    return e;
}

Outcome end_to_end() {
    Outcome out;
    const auto potential = builtin("hoelder_mix", 1, {{"alpha", 0.5}});
    const std::size_t replicas = 10, keep = 1000;
    const double eta = 1e-3;
    const std::size_t k = 1000000;

    ChainConfig ref_cfg;
    ref_cfg.eta = eta / 100;
    ref_cfg.steps = 100 * k * 10 / replicas;
    ref_cfg.stride = ref_cfg.steps / (keep + 10);
    ref_cfg.seed = 777;
    auto ref = tail_points(run_replicas(GradientOracle::exact(potential), ref_cfg, replicas, threads()), keep);

    auto ss_run = [&](double step, std::size_t steps, std::uint64_t seed) {
        ChainConfig c;
        c.eta = step;
        c.steps = steps;
        c.stride = steps / (keep + 10);
        c.seed = seed;
        return tail_points(run_replicas(GradientOracle::smoothed(potential, 0.05, 4), c, replicas, threads()), keep);
    };
    auto base = w2_against(ss_run(eta, k, 101), ref, keep);
    auto half = w2_against(ss_run(eta / 2, 2 * k, 202), ref, keep);
    const double noise = 2 * std::hypot(base.blocks.se, half.blocks.se);
    out.require(base.pooled < 0.1, fmt("W2 %.4f >= 0.1", base.pooled));
    out.require(half.blocks.mean <= base.blocks.mean + noise,
                fmt("halving eta raised block W2 %.4f -> %.4f (2 se %.4f)", base.blocks.mean, half.blocks.mean,
                    noise));
    out.note(fmt("pooled W2 %.4f (eta/2: %.4f); block W2 %.4f +- %.4f -> %.4f +- %.4f", base.pooled, half.pooled,
                 base.blocks.mean, base.blocks.se, half.blocks.mean, half.blocks.se));
    return out;
}

std::string run_bytes(const ExperimentConfig& c, std::size_t threads_used) {
    auto traces = run_replicas(build_oracle(c), build_chain(c), c.replicas, threads_used);
    std::ostringstream os;
    for (std::size_t i = 0; i < traces.size(); ++i)
        write_trace_csv(os, traces[i], {hex64(config_hash(c)), traces[i].config.seed, i});
    return os.str();
}

Outcome determinism() {
    Outcome out;
    const char* configs[] = {
        R"({"potential": {"name": "quadratic", "dim": 2}, "chain": {"eta": 0.01, "steps": 2000, "seed": 5}, "replicas": 4})",
        R"({"potential": {"name": "hoelder_mix", "dim": 1}, "algorithm": "ss_lmc",
            "chain": {"eta": 0.001, "steps": 5000, "seed": 6, "stride": 7}, "smoothing": {"r": 0.05, "n_batch": 4}, "replicas": 3})",
        R"({"potential": {"name": "shifted_hoelder_sum", "dim": 2}, "algorithm": "ss_sg_lmc",
            "chain": {"eta": 0.001, "steps": 3000, "seed": 7}, "smoothing": {"r": 0.1, "n_batch": 2}, "replicas": 3})",
        R"({"potential": {"name": "shifted_hoelder_sum", "dim": 1}, "algorithm": "sg_lmc",
            "chain": {"eta": 0.001, "steps": 3000, "seed": 8}, "smoothing": {"r": 0.1, "n_batch": 2}, "replicas": 2})",
    };
    std::size_t bytes = 0;
    for (const char* text : configs) {
        auto c = parse_config(nlohmann::json::parse(text));
        const std::string a = run_bytes(c, 1), b = run_bytes(c, 1), t = run_bytes(c, 3);
        out.require(a == b, c.algorithm + ": rerun differs");
        out.require(a == t, c.algorithm + ": thread count changes the traces");
        auto shifted = c;
        shifted.chain.seed += 1;
        out.require(run_bytes(shifted, 1) != a, c.algorithm + ": seed has no effect");
        bytes += a.size();
    }
    out.note(fmt("4 experiments, %zu trace bytes identical across reruns and thread counts", bytes));
    return out;
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "mollifier normalization", 10, mollifier_mass},
        {2, "mollifier gradient L1 norm", 10, gradient_l1},
        {3, "mollifier sampler", 30, mollifier_sampler},
        {4, "LMC stationary variance on the quadratic", 120, lmc_variance},
        {5, "smoothed gradient bias and variance", 60, ss_gradient_stats},
        {6, "moment envelopes", 120, moment_envelopes},
        {7, "planner fidelity", 5, planner_fidelity},
        {8, "bounds oracle equivalence", 1, bounds_oracle},
        {9, "W2 estimators", 30, w2_estimators},
        {10, "end-to-end smoothed LMC", 300, end_to_end},
        {11, "determinism", 60, determinism},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds) o.require(false, fmt("runtime %.1f s over %.0f s", secs, c.limit_seconds));
        if (!o.ok) ++failed;
        std::printf("%s  #%-2d %-42s %7.2f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
