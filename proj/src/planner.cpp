#include "langevin/planner.hpp"

#include "langevin/errors.hpp"

#include <cmath>
#include <limits>

namespace langevin {

namespace {

using ld = long double;

constexpr ld kSlack = 1e-12L;

struct Common {
    ld eps, d, C, L;
    ld log_A;  // log(eps^4 / (48 C^4 d^2))
    ld log_eta_cap;
};

Common common(const PlanRequest& req) {
    validate(req);
    Common c;
    c.eps = req.epsilon;
    c.d = req.d;
    c.C = req.c_const;
    c.L = std::log(2.0L * c.C * c.d / c.eps);
    c.log_A = 4 * std::log(c.eps) - std::log(48.0L) - 4 * std::log(c.C) - 2 * std::log(c.d);
    c.log_eta_cap = 0;
    if (req.omega_one && *req.omega_one > 0) {
        ld w = *req.omega_one;
        c.log_eta_cap = std::min<ld>(0, std::log(static_cast<ld>(req.m) / (2 * w * w)));
    }
    return c;
}

bool finite_positive(ld v) { return std::isfinite(v) && v > 0; }

/// Integer k from log of its lower bound.
void set_k(Plan& p, ld log_bound) {
    ld bound = std::exp(log_bound);
    if (std::isfinite(bound) && bound < 1e30L) {
        ld k = std::max<ld>(1, std::ceil(bound));
        p.k = k;
        p.log_k = std::log(k);
    } else {
        p.k = bound;
        p.log_k = log_bound;
    }
}

void finish(Plan& p) {
    p.eta = std::exp(p.log_eta);
    if (p.log_r) p.r = std::exp(*p.log_r);
    if (p.log_n_batch) {
        ld nb = std::exp(*p.log_n_batch);
        if (std::isfinite(nb) && nb < 1e30L) {
            nb = std::max<ld>(1, std::ceil(nb * (1 - kSlack)));
            p.log_n_batch = std::log(nb);
        }
        p.n_batch = nb;
    }
    p.astronomical = !finite_positive(p.k) || !finite_positive(p.eta) ||
                     (p.r && !finite_positive(*p.r)) || (p.n_batch && !finite_positive(*p.n_batch));
}

PlanTerm term(std::string name, ld value, ld limit) {
    return {std::move(name), value, limit, value <= limit * (1 + kSlack)};
}

/// Same as term() but compares logs, for products that may overflow.
PlanTerm log_term(std::string name, ld log_value, ld log_limit) {
    return {std::move(name), std::exp(log_value), std::exp(log_limit),
            log_value <= log_limit + kSlack * std::max<ld>(1, std::abs(log_limit))};
}

}  // namespace

void validate(const PlanRequest& req) {
    if (!(req.epsilon > 0 && req.epsilon <= 1)) throw InputError("epsilon must lie in (0, 1]");
    if (req.d < 1) throw InputError("dimension must be >= 1");
    if (!(req.c_const >= 1) || !std::isfinite(req.c_const)) throw InputError("C must be >= 1");
    if (!(req.m > 0) || !std::isfinite(req.m)) throw InputError("m must be positive");
    if (req.omega_one && !(*req.omega_one > 0)) throw InputError("omega(1) must be positive");
}

long double Plan::log10_k() const { return log_k / std::log(10.0L); }

Plan plan_lmc(const PlanRequest& req) {
    const Common c = common(req);
    const ld a = req.alpha;
    if (!(a > 1.0L / 3 && a <= 1)) throw UnsupportedRegime("LMC schedules need alpha in (1/3, 1]");

    Plan p;
    p.algorithm = "lmc";
    const ld log_d = std::log(c.d), log_C = std::log(c.C);
    // log(C d^3 e^{Cd} log(2Cd/eps))
    const ld log_X = log_C + 3 * log_d + c.C * c.d + std::log(c.L);

    if (a == 1) {
        p.branch = "lipschitz";
        ld log_k = std::log(16.0L) + 8 * log_C + 16 * log_d + 2 * c.C * c.d + 2 * std::log(c.L) -
                   4 * std::log(c.eps);
        set_k(p, log_k);
        p.log_eta = 0.5L * (4 * std::log(c.eps) - std::log(16.0L) - 4 * log_C - 4 * log_d - p.log_k);
    } else {
        ld log_k = 2 * log_d + (3 * a + 1) / (3 * a - 1) * log_X - 2 / (3 * a - 1) * c.log_A;
        if (a <= 2.0L / 3) {
            p.branch = "holder_low";
        } else {
            p.branch = "holder_high";
            log_k = std::max(log_k, (5 + 3 * a) / 2 * log_d - 3 * a * c.log_A);
        }
        set_k(p, log_k);
        ld log_eta = -4 * a / (1 + 3 * a) * log_d + (1 + a) / (1 + 3 * a) * (c.log_A - p.log_k);
        if (log_eta > c.log_eta_cap) {
            log_eta = c.log_eta_cap;
            p.eta_capped = true;
        }
        p.log_eta = log_eta;
        p.log_r = (c.log_A - p.log_k - p.log_eta) / (2 * a);
    }
    finish(p);
    PlanReport rep = verify_plan(p, req);
    p.predicted_envelope = rep.total;
    p.margins = std::move(rep.terms);
    return p;
}

Plan plan_ss_sg_lmc(const PlanRequest& req) {
    const Common c = common(req);
    Plan p;
    p.algorithm = "ss_sg_lmc";
    p.branch = "ss_sg_lmc";
    const ld log_d = std::log(c.d), log_C = std::log(c.C);
    ld log_k = 4 * std::log(48.0L) + 18 * log_C + 17.5L * log_d + 2 * c.C * c.d + 2 * std::log(c.L) -
               16 * std::log(c.eps);
    set_k(p, log_k);
    ld log_eta = 4 * std::log(c.eps) - std::log(48.0L) - 4 * log_C - 3.25L * log_d - 0.5L * p.log_k;
    if (log_eta > c.log_eta_cap) {
        log_eta = c.log_eta_cap;
        p.eta_capped = true;
    }
    p.log_eta = log_eta;
    p.log_r = c.log_A - 0.5L * log_d;
    p.log_n_batch = p.log_k + p.log_eta - c.log_A;
    finish(p);
    PlanReport rep = verify_plan(p, req);
    p.predicted_envelope = rep.total;
    p.margins = std::move(rep.terms);
    return p;
}

PlanReport verify_plan(const Plan& plan, const PlanRequest& req) {
    const Common c = common(req);
    const ld log_d = std::log(c.d), log_C = std::log(c.C);
    const ld log_k = plan.log_k, log_eta = plan.log_eta;
    const ld log_keta = log_k + log_eta;
    PlanReport rep;

    // envelope E inside the fourth root, and the log of the exponential's time scale
    ld E = 0, log_scale = 0;
    if (plan.algorithm == "lmc" && plan.branch == "lipschitz") {
        ld log_t = 2 * log_d + log_k + 2 * log_eta;
        rep.terms.push_back(log_term("d^2 k eta^2", log_t, 4 * std::log(c.eps) - std::log(16.0L) -
                                                               4 * log_C - 2 * log_d));
        E = std::exp(log_t);
        log_scale = log_C + 3 * log_d + c.C * c.d;
    } else if (plan.algorithm == "lmc") {
        if (!plan.log_r) throw InputError("LMC Hoelder plan without r");
        const ld a = req.alpha, log_r = *plan.log_r;
        ld t1 = 2 * log_d + (a - 1) * log_r + log_k + 2 * log_eta;
        ld t2 = 2 * a * log_r + log_keta;
        ld t3 = log_r + 0.5L * log_d;
        rep.terms.push_back(log_term("d^2 r^(alpha-1) k eta^2", t1, c.log_A));
        rep.terms.push_back(log_term("r^(2 alpha) k eta", t2, c.log_A));
        rep.terms.push_back(log_term("r sqrt(d)", t3, c.log_A));
        rep.terms.push_back(term("r", std::exp(log_r), 1));
        E = std::exp(t1) + std::exp(t2) + std::exp(t3);
        log_scale = log_C + (a - 1) * log_r + 3 * log_d + c.C * c.d;
    } else if (plan.algorithm == "ss_sg_lmc") {
        if (!plan.log_r || !plan.log_n_batch) throw InputError("SS-SG-LMC plan without r or N_B");
        const ld log_r = *plan.log_r;
        ld t1 = 2 * log_d - log_r + log_k + 2 * log_eta;
        ld t2 = log_keta - *plan.log_n_batch;
        ld t3 = log_r + 0.5L * log_d;
        rep.terms.push_back(log_term("d^2 r^-1 k eta^2", t1, c.log_A));
        rep.terms.push_back(log_term("k eta / N_B", t2, c.log_A));
        rep.terms.push_back(log_term("r sqrt(d)", t3, c.log_A));
        rep.terms.push_back(term("r", std::exp(log_r), 1));
        rep.terms.push_back({"N_B >= 1", std::exp(-*plan.log_n_batch), 1, *plan.log_n_batch >= -kSlack});
        E = std::exp(t1) + std::exp(t2) + std::exp(t3);
        log_scale = log_C - log_r + 3 * log_d + c.C * c.d;
    } else {
        throw InputError("unknown plan algorithm: " + plan.algorithm);
    }

    rep.terms.push_back(log_term("eta cap", log_eta, c.log_eta_cap));
    rep.terms.push_back(term("envelope precondition", E, 1));
    const ld first = c.C * std::sqrt(c.d) * std::pow(E, 0.25L);
    const ld second = c.C * c.d * std::exp(-std::exp(log_keta - log_scale));
    rep.terms.push_back(term("first term", first, c.eps / 2));
    rep.terms.push_back(term("exponential term", second, c.eps / 2));
    rep.total = first + second;
    rep.terms.push_back(term("total", rep.total, c.eps));
    for (const auto& t : rep.terms) {
        if (!t.ok) {
            rep.ok = false;
            if (rep.failure.empty()) rep.failure = t.name;
        }
    }
    return rep;
}

}  // namespace langevin
