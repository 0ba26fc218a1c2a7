#include "langevin/bounds.hpp"
#include "langevin/config.hpp"
#include "langevin/errors.hpp"
#include "langevin/metrics.hpp"
#include "langevin/planner.hpp"
#include "langevin/trace_io.hpp"
#include "langevin/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace langevin;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, failed = 1, bad_input = 2, diverged = 3, refused = 4 };

json num(long double v) {
    if (std::isfinite(static_cast<double>(v))) return static_cast<double>(v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6Le", v);
    return std::string(buf);
}

std::string sci(long double log10_v) {
    long double e = std::floor(log10_v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3Lfe%+.0Lf", std::pow(10.0L, log10_v - e), e);
    return buf;
}

std::size_t thread_count() {
    if (const char* env = std::getenv("LANGEVIN_THREADS")) {
        try {
            long n = std::stol(env);
            if (n >= 1) return static_cast<std::size_t>(n);
        } catch (const std::exception&) {
        }
        throw InputError("LANGEVIN_THREADS must be a positive integer");
    }
    return 0;
}

double potential_m(const ExperimentConfig& c) {
    if (is_finite_sum_name(c.potential.name))
        return builtin_finite_sum(c.potential.name, c.potential.dim, c.potential.params).m;
    return builtin(c.potential.name, c.potential.dim, c.potential.params).m;
}

json plan_json(const Plan& p) {
    json j = {{"algorithm", p.algorithm},
              {"branch", p.branch},
              {"k", num(p.k)},
              {"log10_k", static_cast<double>(p.log10_k())},
              {"eta", num(p.eta)},
              {"eta_capped", p.eta_capped},
              {"astronomical", p.astronomical},
              {"predicted_envelope", num(p.predicted_envelope)}};
    j["r"] = p.r ? num(*p.r) : json();
    j["n_batch"] = p.n_batch ? num(*p.n_batch) : json();
    json margins = json::array();
    for (const auto& t : p.margins)
        margins.push_back({{"name", t.name}, {"value", num(t.value)}, {"limit", num(t.limit)},
                           {"margin", num(t.limit - t.value)}, {"ok", t.ok}});
    j["margins"] = margins;
    return j;
}

json bound_json(const ExperimentConfig& c, const GradientOracle& oracle) {
    double r = c.bound.r ? *c.bound.r : c.smoothing ? c.smoothing->r : 0.0;
    if (!(r > 0)) throw InputError("bound evaluation needs bound.r or a smoothing radius");
    ChainConfig chain = build_chain(c);
    BoundInputs in;
    if (c.algorithm == "sg_lmc") {
        if (!c.bound.delta) throw InputError("sg_lmc bound evaluation needs bound.delta");
        auto f = builtin_finite_sum(c.potential.name, c.potential.dim, c.potential.params);
        in = make_bound_inputs(GradientOracle::exact(f.aggregate()), chain, r, c.bound.a_abs);
    } else {
        in = make_bound_inputs(oracle, chain, r, c.bound.a_abs);
    }
    if (c.bound.delta) in.delta = {(*c.bound.delta)[0], (*c.bound.delta)[1], (*c.bound.delta)[2], (*c.bound.delta)[3]};
    TheoremBound tb = theorem_bound(in, r, chain.eta, static_cast<double>(chain.steps));
    json inputs = {{"d", in.d}, {"beta", in.beta}, {"m", in.m}, {"b", in.b}, {"m_tilde", in.m_tilde},
                   {"b_tilde", in.b_tilde}, {"kappa0", in.kappa0}, {"p0_sup_log", in.p0_sup_log},
                   {"grad_u_mnorm", in.grad_u_mnorm}, {"g_tilde_mnorm", in.g_tilde_mnorm},
                   {"omega_r", in.omega_grad_u.eval(r)}, {"omega_one", in.omega_grad_u.eval(1.0)},
                   {"omega_g_tilde_one", in.omega_g_tilde_one}, {"u0", in.u0}, {"a", in.a_abs},
                   {"delta", {in.delta.bias0, in.delta.bias2, in.delta.var0, in.delta.var2}}};
    json out = {{"r", r},
                {"eta", chain.eta},
                {"k", chain.steps},
                {"inputs", inputs},
                {"c0", num(tb.c0)},
                {"c1", num(tb.c1)},
                {"c1_prime", num(tb.c1_prime)},
                {"c2_inner", num(tb.c2_inner)},
                {"c2", tb.c2 ? num(*tb.c2) : json()},
                {"kappa_inf", num(tb.kappa_inf)},
                {"c_p_bound", num(tb.c_p_bound)},
                {"log_c_p", num(tb.log_c_p)},
                {"c_ls_bound", num(tb.c_ls_bound)},
                {"log_c_ls", num(tb.log_c_ls)},
                {"f_value", num(tb.f_value)},
                {"f_at_most_one", tb.f_at_most_one},
                {"first_term", num(tb.first_term)},
                {"second_term", tb.second_term ? num(*tb.second_term) : json()},
                {"w2_bound", tb.w2_bound ? num(*tb.w2_bound) : json()}};
    if (!tb.c2) out["note"] = "initial KL term is negative; the bound is undefined for this initial law";
    if (auto* e = std::get_if<ExactGradient>(&oracle.kind()); e && e->potential.modulus_radius)
        out["modulus_note"] = "gradient modulus declared only on the ball of radius " +
                              std::to_string(*e->potential.modulus_radius);
    return out;
}

int do_sample(const ExperimentConfig& c) {
    GradientOracle oracle = build_oracle(c);
    ChainConfig chain = build_chain(c);
    const std::string hash = hex64(config_hash(c));
    fs::create_directories(c.out_dir);
    std::ofstream(fs::path(c.out_dir) / "config.json") << to_json(c).dump(2) << '\n';

    const auto t0 = std::chrono::steady_clock::now();
    auto traces = run_replicas(oracle, chain, c.replicas, thread_count());
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const double m = potential_m(c);
    json reps = json::array();
    bool any_diverged = false;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const Trace& t = traces[i];
        const std::string file = "trace_" + std::to_string(i) + ".csv";
        write_trace_csv((fs::path(c.out_dir) / file).string(), t, {hash, t.config.seed, i});
        json r = {{"replica", i}, {"seed", t.config.seed}, {"file", file}, {"diverged", t.diverged},
                  {"elapsed_seconds", t.elapsed_seconds}};
        if (t.diverged) {
            any_diverged = true;
            r["divergence_step"] = t.divergence_step;
            std::cerr << "replica " << i << " diverged at step " << t.divergence_step << '\n';
        } else {
            MomentReport mr = moment_report(t, m);
            r["moments"] = {{"n", mr.n}, {"mean", mr.mean}, {"mean_se", mr.mean_se},
                            {"second_moment", mr.second_moment}, {"second_moment_se", mr.second_moment_se},
                            {"max_norm", mr.max_norm}, {"exp_alpha", mr.exp_alpha},
                            {"exp_moment", mr.exp_moment}, {"exp_moment_se", mr.exp_moment_se}};
        }
        reps.push_back(r);
    }
    json summary = {{"config_hash", hash}, {"seed", c.chain.seed}, {"oracle", oracle.label()},
                    {"wall_seconds", wall}, {"replicas", reps}};
    if (c.bound.enabled) summary["bound"] = bound_json(c, oracle);
    std::ofstream(fs::path(c.out_dir) / "summary.json") << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    return any_diverged ? diverged : ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Langevin-type samplers with smoothed gradients, schedules and error bounds"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    app.add_option("--config", config_path, "JSON experiment config");
    app.add_option("--seed", seed, "Root seed (overrides chain.seed)");
    app.add_option("--out", out, "Output directory (overrides outputs.dir)");

    auto* sample = app.add_subcommand("sample", "Run chains and write traces plus a summary");

    auto* plan = app.add_subcommand("plan", "Print the step/accuracy schedule for a target epsilon");
    std::optional<double> epsilon, alpha, c_const;
    std::optional<int> dim;
    std::optional<std::string> algorithm;
    bool execute = false;
    std::optional<std::uint64_t> cap;
    plan->add_option("--epsilon", epsilon);
    plan->add_option("--alpha", alpha);
    plan->add_option("--dim", dim);
    plan->add_option("--C", c_const);
    plan->add_option("--algorithm", algorithm)->check(CLI::IsMember({"lmc", "ss_sg_lmc"}));
    plan->add_flag("--execute", execute, "Run the planned chain when k is below the cap");
    plan->add_option("--cap", cap, "Largest k accepted by --execute");

    auto* bound = app.add_subcommand("bound", "Evaluate every constant of the W2 error bound");

    auto* verify = app.add_subcommand("verify", "Run a module's invariant battery");
    std::string suite = "all";
    verify->add_option("suite", suite)->check(CLI::IsMember({"all", "mollifier", "potential", "metrics", "bounds"}));

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (seed) cfg.chain.seed = *seed;
        if (out) cfg.out_dir = *out;

        if (sample->parsed()) {
            if (config_path.empty()) throw InputError("sample needs --config");
            return do_sample(cfg);
        }
        if (bound->parsed()) {
            GradientOracle oracle = build_oracle(cfg);
            std::cout << bound_json(cfg, oracle).dump(2) << '\n';
            return ok;
        }
        if (plan->parsed()) {
            if (epsilon) cfg.plan.epsilon = *epsilon;
            if (alpha) cfg.plan.alpha = *alpha;
            if (c_const) cfg.plan.c_const = *c_const;
            if (dim) cfg.potential.dim = *dim;
            if (algorithm) cfg.plan.algorithm = *algorithm;
            if (cap) cfg.plan.cap = *cap;
            validate(cfg);
            PlanRequest req = build_plan_request(cfg);
            Plan p = cfg.plan.algorithm == "lmc" ? plan_lmc(req) : plan_ss_sg_lmc(req);
            PlanReport rep = verify_plan(p, req);
            json j = plan_json(p);
            j["request"] = {{"epsilon", req.epsilon}, {"alpha", req.alpha}, {"d", req.d}, {"C", req.c_const},
                            {"m", req.m}, {"omega_one", req.omega_one ? json(*req.omega_one) : json()}};
            j["verified"] = rep.ok;
            if (!rep.ok) j["violated"] = rep.failure;
            if (!execute) {
                std::cout << j.dump(2) << '\n';
                return ok;
            }
            const std::uint64_t limit = cfg.plan.cap.value_or(10'000'000);
            if (p.astronomical || p.k > static_cast<long double>(limit)) {
                j["refused"] = true;
                std::cout << j.dump(2) << '\n';
                std::cerr << "refusing to execute: k = " << sci(p.log10_k()) << " (log10 k = "
                          << static_cast<double>(p.log10_k()) << ") exceeds the cap " << limit << '\n';
                return refused;
            }
            std::cout << j.dump(2) << '\n';
            ExperimentConfig run = cfg;
            run.chain.steps = static_cast<std::uint64_t>(p.k);
            run.chain.eta = static_cast<double>(p.eta);
            if (p.algorithm == "ss_sg_lmc") {
                run.algorithm = "ss_sg_lmc";
                run.smoothing = SmoothingConfig{static_cast<double>(*p.r), static_cast<std::uint64_t>(*p.n_batch)};
            } else {
                run.algorithm = "lmc";
            }
            validate(run);
            return do_sample(run);
        }
        if (verify->parsed()) {
            std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
            json reports = json::array();
            bool all = true;
            for (const auto& n : names) {
                json r = run_suite(n, cfg.chain.seed + 1);
                all = all && r["passed"].get<bool>();
                reports.push_back(r);
            }
            std::cout << json{{"passed", all}, {"suites", reports}}.dump(2) << '\n';
            if (!all) {
                for (const auto& r : reports)
                    for (const auto& c : r["checks"])
                        if (!c["passed"].get<bool>())
                            std::cerr << "FAILED " << r["suite"].get<std::string>() << ": "
                                      << c["name"].get<std::string>() << " (" << c["detail"].get<std::string>() << ")\n";
            }
            return all ? ok : failed;
        }
    } catch (const ChainDivergence& e) {
        std::cerr << e.what() << '\n';
        return diverged;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return bad_input;
    } catch (const UnsupportedRegime& e) {
        std::cerr << "unsupported regime: " << e.what() << '\n';
        return bad_input;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return bad_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failed;
    }
    return ok;
}
