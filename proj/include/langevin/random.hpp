#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace langevin {

using Engine = std::mt19937_64;

/// splitmix64 finaliser; bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of replica `index` derived from a root seed: splitmix64(seed ^ (golden * (index + 1))).
std::uint64_t replica_seed(std::uint64_t root, std::uint64_t index) noexcept;

/// Independent sub-streams of one chain.
enum class Stream : std::uint64_t { brownian = 1, zeta = 2, lambda = 3, init = 4, aux = 5 };

std::uint64_t stream_seed(std::uint64_t chain_seed, Stream s) noexcept;

inline Engine make_engine(std::uint64_t chain_seed, Stream s) {
    return Engine{stream_seed(chain_seed, s)};
}

/// Fills `out` with i.i.d. standard normals.
void fill_gaussian(Engine& rng, std::span<double> out);

/// Uniform direction on the unit sphere S^{d-1}; a zero Gaussian draw is re-drawn.
void uniform_direction(Engine& rng, std::span<double> out);

}  // namespace langevin
