#include "qwalk/rng.hpp"

namespace qwalk {

std::uint64_t splitmix64_at(std::uint64_t s0, std::uint64_t k) {
    std::uint64_t z = s0 + (k + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RngStream derive_stream(const SeedSpec& seed) {
    return RngStream(splitmix64_at(seed.master_seed, seed.realization_index));
}

}  // namespace qwalk
