#pragma once

#include <optional>
#include <string>
#include <vector>

namespace langevin {

struct PlanRequest {
    double epsilon = 1.0;
    int d = 1;
    double alpha = 1.0;    ///< Hoelder exponent of the gradient (LMC only)
    double c_const = 1.0;  ///< constant C >= 1 of the concise bound
    double m = 1.0;
    /// omega(1) of the gradient (or of the component modulus); absent means eta is only capped at 1.
    std::optional<double> omega_one;
};

void validate(const PlanRequest& req);

/// One checked inequality value <= limit.
struct PlanTerm {
    std::string name;
    long double value = 0;
    long double limit = 0;
    bool ok = false;
};

/// Schedule in extended precision. The log_* fields are natural logs and stay finite when
/// the linear values overflow, which is flagged as `astronomical`.
struct Plan {
    std::string algorithm;  ///< "lmc" or "ss_sg_lmc"
    std::string branch;     ///< "holder_low", "holder_high", "lipschitz", "ss_sg_lmc"
    long double k = 0;
    long double log_k = 0;
    long double eta = 0;
    long double log_eta = 0;
    bool eta_capped = false;
    std::optional<long double> r;
    std::optional<long double> log_r;
    std::optional<long double> n_batch;
    std::optional<long double> log_n_batch;
    bool astronomical = false;
    long double predicted_envelope = 0;  ///< right side of the concise bound
    std::vector<PlanTerm> margins;

    long double log10_k() const;
};

struct PlanReport {
    bool ok = true;
    std::vector<PlanTerm> terms;
    long double total = 0;
    std::string failure;  ///< name of the first violated term
};

/// LMC schedule; alpha <= 1/3 throws UnsupportedRegime.
Plan plan_lmc(const PlanRequest& req);

/// Spherically smoothed stochastic-gradient LMC schedule.
Plan plan_ss_sg_lmc(const PlanRequest& req);

/// Recomputes every envelope term of the plan; inequalities allow 1e-12 relative round-off.
PlanReport verify_plan(const Plan& plan, const PlanRequest& req);

}  // namespace langevin
