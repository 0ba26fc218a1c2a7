#pragma once

#include "langevin/planner.hpp"
#include "langevin/potentials.hpp"
#include "langevin/samplers.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace langevin {

struct PotentialConfig {
    std::string name = "quadratic";
    int dim = 1;
    Params params;
    bool operator==(const PotentialConfig&) const = default;
};

struct InitConfig {
    std::string kind = "gaussian";  ///< gaussian | point
    double scale = 1.0;
    Vector x0;
    bool operator==(const InitConfig&) const = default;
};

struct ChainSection {
    double beta = 1.0;
    double eta = 0.01;
    std::uint64_t steps = 1000;
    std::uint64_t seed = 0;
    std::uint64_t stride = 1;
    InitConfig init;
    bool operator==(const ChainSection&) const = default;
};

struct SmoothingConfig {
    double r = 0.1;
    std::uint64_t n_batch = 1;
    bool operator==(const SmoothingConfig&) const = default;
};

struct BoundConfig {
    bool enabled = false;
    std::optional<double> r;  ///< defaults to the smoothing radius
    double a_abs = 1.0;
    std::optional<std::array<double, 4>> delta;  ///< (bias0, bias2, var0, var2) override
    bool operator==(const BoundConfig&) const = default;
};

struct PlanConfig {
    std::string algorithm = "lmc";  ///< lmc | ss_sg_lmc
    double epsilon = 1.0;
    double alpha = 1.0;
    double c_const = 1.0;
    std::optional<std::uint64_t> cap;
    bool operator==(const PlanConfig&) const = default;
};

struct ExperimentConfig {
    PotentialConfig potential;
    std::string algorithm = "lmc";  ///< lmc | sg_lmc | ss_lmc | ss_sg_lmc
    ChainSection chain;
    std::optional<SmoothingConfig> smoothing;
    std::uint64_t replicas = 1;
    std::string out_dir = "out";
    BoundConfig bound;
    PlanConfig plan;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Strict parse: unknown keys and out-of-range values throw InputError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& c);

void validate(const ExperimentConfig& c);

/// Canonical serialisation (sorted keys, no whitespace).
std::string canonical_json(const ExperimentConfig& c);
/// FNV-1a 64-bit hash of the canonical form without the `outputs` section.
std::uint64_t config_hash(const ExperimentConfig& c);
std::string hex64(std::uint64_t v);

bool is_finite_sum_name(const std::string& name);
GradientOracle build_oracle(const ExperimentConfig& c);
ChainConfig build_chain(const ExperimentConfig& c);
PlanRequest build_plan_request(const ExperimentConfig& c);

}  // namespace langevin
