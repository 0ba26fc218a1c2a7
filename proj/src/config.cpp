#include "langevin/config.hpp"

#include "langevin/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace langevin {

using nlohmann::json;

namespace {

const std::set<std::string> kAlgorithms{"lmc", "sg_lmc", "ss_lmc", "ss_sg_lmc"};

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw InputError(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
            throw InputError("unknown key '" + it.key() + "' in " + where);
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError("bad value for '" + std::string(key) + "' in " + where);
    }
}

std::uint64_t read_u64(const json& j, const char* key, std::uint64_t fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw InputError("'" + std::string(key) + "' in " + where + " must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

}  // namespace

bool is_finite_sum_name(const std::string& name) { return name == "shifted_hoelder_sum"; }

ExperimentConfig parse_config(const json& j) {
    only_keys(j, "config", {"potential", "algorithm", "chain", "smoothing", "replicas", "outputs", "bound", "plan"});
    ExperimentConfig c;
    if (j.contains("potential")) {
        const json& p = j.at("potential");
        only_keys(p, "potential", {"name", "dim", "params"});
        read(p, "name", c.potential.name, "potential");
        read(p, "dim", c.potential.dim, "potential");
        if (p.contains("params") && !p.at("params").is_object())
            throw InputError("potential.params must be an object");
    }
    read(j, "algorithm", c.algorithm, "config");
    if (j.contains("chain")) {
        const json& ch = j.at("chain");
        only_keys(ch, "chain", {"beta", "eta", "steps", "seed", "stride", "init"});
        read(ch, "beta", c.chain.beta, "chain");
        read(ch, "eta", c.chain.eta, "chain");
        c.chain.steps = read_u64(ch, "steps", c.chain.steps, "chain");
        c.chain.seed = read_u64(ch, "seed", c.chain.seed, "chain");
        c.chain.stride = read_u64(ch, "stride", c.chain.stride, "chain");
        if (ch.contains("init")) {
            const json& in = ch.at("init");
            only_keys(in, "chain.init", {"kind", "scale", "x0"});
            read(in, "kind", c.chain.init.kind, "chain.init");
            read(in, "scale", c.chain.init.scale, "chain.init");
            read(in, "x0", c.chain.init.x0, "chain.init");
        }
    }
    if (j.contains("smoothing") && !j.at("smoothing").is_null()) {
        const json& s = j.at("smoothing");
        only_keys(s, "smoothing", {"r", "n_batch"});
        SmoothingConfig sc;
        read(s, "r", sc.r, "smoothing");
        sc.n_batch = read_u64(s, "n_batch", sc.n_batch, "smoothing");
        c.smoothing = sc;
    }
    c.replicas = read_u64(j, "replicas", c.replicas, "config");
    if (j.contains("outputs")) {
        only_keys(j.at("outputs"), "outputs", {"dir"});
        read(j.at("outputs"), "dir", c.out_dir, "outputs");
    }
    if (j.contains("bound")) {
        const json& b = j.at("bound");
        only_keys(b, "bound", {"enabled", "r", "a", "delta"});
        read(b, "enabled", c.bound.enabled, "bound");
        if (b.contains("r") && !b.at("r").is_null()) c.bound.r = b.at("r").get<double>();
        read(b, "a", c.bound.a_abs, "bound");
        if (b.contains("delta") && !b.at("delta").is_null()) {
            std::array<double, 4> d{};
            read(b, "delta", d, "bound");
            c.bound.delta = d;
        }
    }
    if (j.contains("plan")) {
        const json& p = j.at("plan");
        only_keys(p, "plan", {"algorithm", "epsilon", "alpha", "C", "cap"});
        read(p, "algorithm", c.plan.algorithm, "plan");
        read(p, "epsilon", c.plan.epsilon, "plan");
        read(p, "alpha", c.plan.alpha, "plan");
        read(p, "C", c.plan.c_const, "plan");
        if (p.contains("cap") && !p.at("cap").is_null()) c.plan.cap = read_u64(p, "cap", 0, "plan");
    }
    if (j.contains("potential") && j.at("potential").contains("params")) {
        for (auto& [k, v] : j.at("potential").at("params").items()) {
            if (!v.is_number()) throw InputError("potential parameter '" + k + "' must be a number");
            c.potential.params[k] = v.get<double>();
        }
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["potential"] = {{"name", c.potential.name}, {"dim", c.potential.dim}, {"params", json::object()}};
    for (const auto& [k, v] : c.potential.params) j["potential"]["params"][k] = v;
    j["algorithm"] = c.algorithm;
    json init = {{"kind", c.chain.init.kind}, {"scale", c.chain.init.scale}, {"x0", c.chain.init.x0}};
    j["chain"] = {{"beta", c.chain.beta}, {"eta", c.chain.eta}, {"steps", c.chain.steps},
                  {"seed", c.chain.seed}, {"stride", c.chain.stride}, {"init", init}};
    j["smoothing"] = c.smoothing ? json{{"r", c.smoothing->r}, {"n_batch", c.smoothing->n_batch}} : json();
    j["replicas"] = c.replicas;
    j["outputs"] = {{"dir", c.out_dir}};
    j["bound"] = {{"enabled", c.bound.enabled},
                  {"r", c.bound.r ? json(*c.bound.r) : json()},
                  {"a", c.bound.a_abs},
                  {"delta", c.bound.delta ? json(*c.bound.delta) : json()}};
    j["plan"] = {{"algorithm", c.plan.algorithm}, {"epsilon", c.plan.epsilon}, {"alpha", c.plan.alpha},
                 {"C", c.plan.c_const}, {"cap", c.plan.cap ? json(*c.plan.cap) : json()}};
    return j;
}

void validate(const ExperimentConfig& c) {
    if (c.potential.dim < 1) throw InputError("potential.dim must be >= 1");
    if (!kAlgorithms.count(c.algorithm)) throw InputError("unknown algorithm: " + c.algorithm);
    const bool finite_sum = is_finite_sum_name(c.potential.name);
    if (!finite_sum) {
        auto names = builtin_names();
        if (std::find(names.begin(), names.end(), c.potential.name) == names.end())
            throw InputError("unknown potential: " + c.potential.name);
    }
    if ((c.algorithm == "ss_sg_lmc" || c.algorithm == "sg_lmc") && !finite_sum)
        throw InputError(c.algorithm + " requires a finite-sum potential");
    const bool needs_smoothing = c.algorithm == "ss_lmc" || c.algorithm == "ss_sg_lmc";
    if (needs_smoothing && !c.smoothing) throw InputError(c.algorithm + " requires a smoothing section");
    if (c.algorithm == "sg_lmc" && !c.smoothing) throw InputError("sg_lmc requires smoothing.n_batch");
    if (c.smoothing) {
        if (!(c.smoothing->r > 0 && c.smoothing->r <= 1)) throw InputError("smoothing.r must lie in (0, 1]");
        if (c.smoothing->n_batch < 1) throw InputError("smoothing.n_batch must be >= 1");
    }
    if (!(c.chain.beta > 0)) throw InputError("chain.beta must be positive");
    if (!(c.chain.eta > 0)) throw InputError("chain.eta must be positive");
    if (c.chain.stride < 1) throw InputError("chain.stride must be >= 1");
    if (c.chain.init.kind == "gaussian") {
        if (!(c.chain.init.scale > 0)) throw InputError("chain.init.scale must be positive");
    } else if (c.chain.init.kind == "point") {
        if (c.chain.init.x0.size() != static_cast<std::size_t>(c.potential.dim))
            throw InputError("chain.init.x0 must have potential.dim entries");
    } else {
        throw InputError("chain.init.kind must be gaussian or point");
    }
    if (c.replicas < 1) throw InputError("replicas must be >= 1");
    if (c.bound.r && !(*c.bound.r > 0 && *c.bound.r <= 1)) throw InputError("bound.r must lie in (0, 1]");
    if (!(c.bound.a_abs > 0)) throw InputError("bound.a must be positive");
    if (c.bound.delta)
        for (double v : *c.bound.delta)
            if (!(v >= 0)) throw InputError("bound.delta entries must be nonnegative");
    if (c.plan.algorithm != "lmc" && c.plan.algorithm != "ss_sg_lmc")
        throw InputError("plan.algorithm must be lmc or ss_sg_lmc");
    if (!(c.plan.epsilon > 0 && c.plan.epsilon <= 1)) throw InputError("plan.epsilon must lie in (0, 1]");
    if (!(c.plan.c_const >= 1)) throw InputError("plan.C must be >= 1");
}

std::string canonical_json(const ExperimentConfig& c) { return to_json(c).dump(); }

std::uint64_t config_hash(const ExperimentConfig& c) {
    auto j = to_json(c);
    j.erase("outputs");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << v;
    return os.str();
}

namespace {

/// Plain mini-batch gradient (N/N_B) sum_j grad U_{lambda_j}(x), no smoothing.
CustomGradient minibatch_gradient(FiniteSumPotential f, std::size_t n_batch, const BoundConfig& b) {
    CustomGradient g;
    g.dim = f.dim;
    g.label = "sg_lmc";
    if (b.delta) g.delta = {(*b.delta)[0], (*b.delta)[1], (*b.delta)[2], (*b.delta)[3]};
    auto shared = std::make_shared<FiniteSumPotential>(std::move(f));
    g.eval = [shared, n_batch](std::span<const double> x, SmoothingStreams& s, std::span<double> out) {
        const std::size_t n = shared->size();
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        Vector tmp(x.size());
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t j = 0; j < n_batch; ++j) {
            shared->components[pick(s.lambda)].grad(x, tmp);
            for (std::size_t i = 0; i < x.size(); ++i) out[i] += tmp[i];
        }
        const double w = static_cast<double>(n) / static_cast<double>(n_batch);
        for (auto& v : out) v *= w;
    };
    return g;
}

}  // namespace

GradientOracle build_oracle(const ExperimentConfig& c) {
    validate(c);
    const auto& p = c.potential;
    if (is_finite_sum_name(p.name)) {
        FiniteSumPotential f = builtin_finite_sum(p.name, p.dim, p.params);
        if (c.algorithm == "ss_sg_lmc") return GradientOracle::finite_sum(std::move(f), c.smoothing->r, c.smoothing->n_batch);
        if (c.algorithm == "sg_lmc") return GradientOracle{minibatch_gradient(std::move(f), c.smoothing->n_batch, c.bound)};
        PotentialSpec agg = f.aggregate();
        if (c.algorithm == "ss_lmc") return GradientOracle::smoothed(std::move(agg), c.smoothing->r, c.smoothing->n_batch);
        return GradientOracle::exact(std::move(agg));
    }
    PotentialSpec spec = builtin(p.name, p.dim, p.params);
    if (c.algorithm == "ss_lmc") return GradientOracle::smoothed(std::move(spec), c.smoothing->r, c.smoothing->n_batch);
    return GradientOracle::exact(std::move(spec));
}

ChainConfig build_chain(const ExperimentConfig& c) {
    ChainConfig cfg;
    cfg.beta = c.chain.beta;
    cfg.eta = c.chain.eta;
    cfg.steps = c.chain.steps;
    cfg.seed = c.chain.seed;
    cfg.stride = c.chain.stride;
    if (c.chain.init.kind == "point")
        cfg.init = PointInit{c.chain.init.x0};
    else
        cfg.init = GaussianInit{c.chain.init.scale};
    validate(cfg);
    return cfg;
}

PlanRequest build_plan_request(const ExperimentConfig& c) {
    PlanRequest req;
    req.epsilon = c.plan.epsilon;
    req.alpha = c.plan.alpha;
    req.c_const = c.plan.c_const;
    req.d = c.potential.dim;
    if (is_finite_sum_name(c.potential.name)) {
        auto f = builtin_finite_sum(c.potential.name, c.potential.dim, c.potential.params);
        req.m = f.m;
        req.omega_one = f.component_modulus.eval(1.0);
    } else {
        auto p = builtin(c.potential.name, c.potential.dim, c.potential.params);
        req.m = p.m;
        req.omega_one = p.modulus.eval(1.0);
    }
    validate(req);
    return req;
}

}  // namespace langevin
