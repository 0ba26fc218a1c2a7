#pragma once

#include "langevin/mollifier.hpp"
#include "langevin/potentials.hpp"
#include "langevin/random.hpp"
#include "langevin/vec.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace langevin {

struct GaussianInit {
    double scale = 1.0;
};
struct PointInit {
    Vector x0;
};
struct CustomInit {
    std::function<void(Engine&, std::span<double>)> draw;
};
using InitLaw = std::variant<GaussianInit, PointInit, CustomInit>;

struct ChainConfig {
    double beta = 1.0;
    double eta = 0.01;
    std::size_t steps = 1000;
    std::uint64_t seed = 0;
    InitLaw init = GaussianInit{};
    std::size_t stride = 1;  ///< record every stride-th iterate (plus the last one)
};

void validate(const ChainConfig& cfg);

/// Bias/variance quadruple (delta_{b,r,0}, delta_{b,r,2}, delta_{v,0}, delta_{v,2}).
struct Delta {
    double bias0 = 0.0;
    double bias2 = 0.0;
    double var0 = 0.0;
    double var2 = 0.0;

    double total0() const noexcept { return bias0 + var0; }
    double total2() const noexcept { return bias2 + var2; }
};

/// Random streams consumed by stochastic gradients: zeta draws and component indices.
struct SmoothingStreams {
    Engine zeta;
    Engine lambda;

    static SmoothingStreams for_chain(std::uint64_t chain_seed) {
        return {make_engine(chain_seed, Stream::zeta), make_engine(chain_seed, Stream::lambda)};
    }
};

struct ExactGradient {
    PotentialSpec potential;
};

/// G(x) = (1/N_B) sum_j grad U(x + r zeta_j), zeta_j ~ rho.
struct SphericalSmoothed {
    PotentialSpec potential;
    double radius;
    std::size_t n_batch;
};

/// G(x) = (N/N_B) sum_j grad U_{lambda_j}(x + r zeta_j), lambda_j uniform on {1..N}.
struct FiniteSumSpherical {
    FiniteSumPotential potential;
    double radius;
    std::size_t n_batch;
};

/// User-supplied stochastic gradient with user-declared delta (only Monte Carlo spot checks).
struct CustomGradient {
    int dim;
    std::function<void(std::span<const double>, SmoothingStreams&, std::span<double>)> eval;
    Delta delta;
    std::string label = "custom";
};

class GradientOracle {
public:
    using Kind = std::variant<ExactGradient, SphericalSmoothed, FiniteSumSpherical, CustomGradient>;

    explicit GradientOracle(Kind kind);

    static GradientOracle exact(PotentialSpec p) { return GradientOracle{ExactGradient{std::move(p)}}; }
    static GradientOracle smoothed(PotentialSpec p, double r, std::size_t n_batch) {
        return GradientOracle{SphericalSmoothed{std::move(p), r, n_batch}};
    }
    static GradientOracle finite_sum(FiniteSumPotential f, double r, std::size_t n_batch) {
        return GradientOracle{FiniteSumSpherical{std::move(f), r, n_batch}};
    }

    const Kind& kind() const noexcept { return kind_; }
    int dim() const noexcept;
    std::string label() const;
    bool is_stochastic() const noexcept;
    /// Smoothing radius r' of the smoothed kinds.
    std::optional<double> radius() const noexcept;

    /// Delta for the mollification radius r used by the error bound. Exact gradients give
    /// (omega(r)^2/2, 0, 0, 0); smoothed kinds require r == r' and give (0, 0, omega(r)^2/(2 N_B), 0).
    Delta delta(double r) const;

    void evaluate(std::span<const double> x, SmoothingStreams& streams, std::span<double> out) const;

private:
    Kind kind_;
    std::optional<Mollifier> unit_kernel_;
};

/// Mini-batch spherically smoothed gradient for the smoothed oracle kinds.
Vector ss_gradient(const GradientOracle& o, std::span<const double> x, SmoothingStreams& streams);

/// Recorded iterates of one chain, row-major.
struct Trace {
    int dim = 0;
    std::vector<std::size_t> steps;
    std::vector<double> data;
    ChainConfig config;
    double elapsed_seconds = 0.0;
    bool diverged = false;
    std::size_t divergence_step = 0;

    std::size_t size() const noexcept { return steps.size(); }
    std::span<const double> point(std::size_t i) const {
        return {data.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
};

class ChainDivergence : public std::runtime_error {
public:
    ChainDivergence(std::size_t step, Trace partial);
    std::size_t step() const noexcept { return step_; }
    const Trace& partial() const noexcept { return partial_; }

private:
    std::size_t step_;
    Trace partial_;
};

/// |Y| above this aborts the chain.
inline constexpr double kDivergenceRadius = 1e8;

/// y - eta g + sqrt(2 eta / beta) z, z ~ N(0, I) drawn from `rng`; writes into `out`.
void step(std::span<const double> y, std::span<const double> g, const ChainConfig& cfg,
          Engine& rng, std::span<double> out);
Vector step(std::span<const double> y, std::span<const double> g, const ChainConfig& cfg,
            Engine& rng);

void draw_initial(const InitLaw& init, Engine& rng, std::span<double> out);

/// Runs k steps. Throws ChainDivergence (carrying the partial trace) on a non-finite or
/// exploding iterate.
Trace run(const GradientOracle& oracle, const ChainConfig& cfg);

/// Replica i uses seed replica_seed(cfg.seed, i). Divergence is recorded on the trace
/// instead of thrown. threads == 0 picks hardware concurrency.
std::vector<Trace> run_replicas(const GradientOracle& oracle, const ChainConfig& cfg,
                                std::size_t replicas, std::size_t threads = 0);

}  // namespace langevin
