#pragma once

#include "langevin/random.hpp"
#include "langevin/samplers.hpp"
#include "langevin/vec.hpp"

#include <optional>
#include <span>
#include <vector>

namespace langevin {

/// n x d sample matrix, row-major, uniform weights.
struct SampleSet {
    int dim = 1;
    std::vector<double> points;

    SampleSet() = default;
    SampleSet(int dim, std::vector<double> points);

    std::size_t size() const noexcept { return points.size() / static_cast<std::size_t>(dim); }
    std::span<const double> point(std::size_t i) const {
        return {points.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }

    /// Recorded iterates from index burn_in on.
    static SampleSet from_trace(const Trace& t, std::size_t burn_in = 0);
};

inline constexpr std::size_t kMaxExactSize = 512;

/// Optimal assignment for an n x n cost matrix (row-major); returns the column of each row.
std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n);

/// Exact W2 between equal-size empirical measures (n <= 512).
double w2_exact(const SampleSet& a, const SampleSet& b);

/// Sorted matching in one dimension.
double w2_1d(const SampleSet& a, const SampleSet& b);

/// Root-mean-square of 1-D W2 over random projections; a proxy that never exceeds W2.
double w2_sliced(const SampleSet& a, const SampleSet& b, std::size_t n_proj, Engine& rng);

struct MomentReport {
    std::size_t n = 0;
    Vector mean;
    Vector mean_se;
    double second_moment = 0;  ///< E|Y|^2
    double second_moment_se = 0;
    double max_norm = 0;
    double exp_alpha = 0;  ///< alpha of the exp-moment estimate
    double exp_moment = 0;  ///< E exp(alpha |Y|^2)
    double exp_moment_se = 0;
};

/// Exp-moment exponent 1 ^ (beta m / 4).
double default_exp_alpha(double beta, double m);

/// Moments of a chain after burn_in (default: first half dropped); standard errors by batch means.
MomentReport moment_report(const Trace& t, double m, std::optional<std::size_t> burn_in = std::nullopt);

/// Moments of independent samples; standard errors from the sample variance.
MomentReport moment_report(const SampleSet& s, double exp_alpha);

}  // namespace langevin
