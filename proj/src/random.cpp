#include "langevin/random.hpp"

#include <cmath>

namespace langevin {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t replica_seed(std::uint64_t root, std::uint64_t index) noexcept {
    return splitmix64(root ^ (kGolden * (index + 1)));
}

std::uint64_t stream_seed(std::uint64_t chain_seed, Stream s) noexcept {
    return splitmix64(splitmix64(chain_seed) + static_cast<std::uint64_t>(s) * kGolden);
}

void fill_gaussian(Engine& rng, std::span<double> out) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& v : out) v = normal(rng);
}

void uniform_direction(Engine& rng, std::span<double> out) {
    double norm2 = 0.0;
    do {
        fill_gaussian(rng, out);
        norm2 = 0.0;
        for (double v : out) norm2 += v * v;
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : out) v *= inv;
}

}  // namespace langevin
