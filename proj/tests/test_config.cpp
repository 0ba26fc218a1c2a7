#include "langevin/config.hpp"
#include "langevin/errors.hpp"
#include "langevin/trace_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace langevin;
using nlohmann::json;

namespace {

json sample_config() {
    return json::parse(R"({
      "potential": {"name": "hoelder_mix", "dim": 2, "params": {"alpha": 0.5}},
      "algorithm": "ss_lmc",
      "chain": {"beta": 1.5, "eta": 0.001, "steps": 100, "seed": 3, "stride": 2,
                "init": {"kind": "gaussian", "scale": 0.5}},
      "smoothing": {"r": 0.05, "n_batch": 4},
      "replicas": 2,
      "outputs": {"dir": "runs/a"},
      "bound": {"enabled": true, "r": 0.05, "a": 1.0},
      "plan": {"algorithm": "lmc", "epsilon": 0.5, "alpha": 0.5, "C": 1.0}
    })");
}

}  // namespace

TEST_CASE("config round trip is the identity") {
    auto c = parse_config(sample_config());
    auto again = parse_config(to_json(c));
    CHECK(again == c);
    CHECK(canonical_json(again) == canonical_json(c));
    CHECK(config_hash(again) == config_hash(c));
    auto d = parse_config(json::object());
    CHECK(parse_config(to_json(d)) == d);
}

TEST_CASE("hash tracks content") {
    auto c = parse_config(sample_config());
    auto d = c;
    d.chain.eta = 0.002;
    CHECK(config_hash(c) != config_hash(d));
    CHECK(hex64(config_hash(c)).size() == 16);
    auto moved = c;
    moved.out_dir = "elsewhere";
    CHECK(config_hash(moved) == config_hash(c));
}

TEST_CASE("unknown keys and bad values are rejected") {
    auto j = sample_config();
    j["chain"]["etta"] = 0.1;
    CHECK_THROWS_AS(parse_config(j), InputError);
    j = sample_config();
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_config(j), InputError);
    j = sample_config();
    j["potential"]["params"]["beta"] = 2;
    CHECK_THROWS_AS(build_oracle(parse_config(j)), InputError);
    j = sample_config();
    j["chain"]["steps"] = -5;
    CHECK_THROWS_AS(parse_config(j), InputError);
    j = sample_config();
    j["algorithm"] = "ss_sg_lmc";
    CHECK_THROWS_AS(parse_config(j), InputError);
    j = sample_config();
    j.erase("smoothing");
    CHECK_THROWS_AS(parse_config(j), InputError);
    j = sample_config();
    j["smoothing"]["r"] = 2.0;
    CHECK_THROWS_AS(parse_config(j), InputError);
}

TEST_CASE("oracle construction follows the algorithm") {
    auto c = parse_config(sample_config());
    CHECK(build_oracle(c).label() == "smoothed");
    c.algorithm = "lmc";
    CHECK(build_oracle(c).label() == "exact");
    c.potential = {"shifted_hoelder_sum", 1, {}};
    c.algorithm = "ss_sg_lmc";
    CHECK(build_oracle(c).label() == "finite_sum");
    c.algorithm = "sg_lmc";
    CHECK(build_oracle(c).label() == "sg_lmc");
}

TEST_CASE("trace CSV round trip is bit exact") {
    auto c = parse_config(sample_config());
    auto t = run(build_oracle(c), build_chain(c));
    std::stringstream ss;
    write_trace_csv(ss, t, {hex64(config_hash(c)), 3, 0});
    const std::string text = ss.str();
    CHECK(text.rfind("# config_hash=" + hex64(config_hash(c)) + " seed=3 replica=0\nstep,x0,x1\n", 0) == 0);
    auto back = read_trace_csv(ss);
    CHECK(back.dim == 2);
    CHECK(back.steps == t.steps);
    CHECK(back.data == t.data);
    std::stringstream again;
    write_trace_csv(again, back, {hex64(config_hash(c)), 3, 0});
    CHECK(again.str() == text);
}

TEST_CASE("divergence marker survives the round trip") {
    Trace t;
    t.dim = 1;
    t.steps = {0, 1};
    t.data = {0.5, 1e9};
    t.diverged = true;
    t.divergence_step = 2;
    std::stringstream ss;
    write_trace_csv(ss, t, {"0", 1, 0});
    CHECK(ss.str().find("# diverged at step 2") != std::string::npos);
    auto back = read_trace_csv(ss);
    CHECK(back.diverged);
    CHECK(back.divergence_step == 2);
}
