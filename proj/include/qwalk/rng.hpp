#pragma once

#include <cstdint>
#include <random>

namespace qwalk {

/// Identifies one deterministic pseudo-random stream: a master seed shared by
/// a whole run plus the index of the realization (ensemble member, trial)
/// within it. Equal pairs always reproduce the same stream.
struct SeedSpec {
    std::uint64_t master_seed = 1;
    std::uint64_t realization_index = 0;
};

/// SplitMix64 output for state `s0 + (k+1)*golden`. This is the documented
/// mix that turns (master_seed, realization_index) into a raw 64-bit engine
/// seed; adjacent indices give statistically independent seeds.
std::uint64_t splitmix64_at(std::uint64_t s0, std::uint64_t k);

/// Seeded uniform stream. The engine is std::mt19937_64 (bit-stable across
/// standard library implementations); uniforms take the high 53 bits of each
/// output, so the double sequence is reproducible everywhere too.
class RngStream {
  public:
    static constexpr const char* kGeneratorName = "std::mt19937_64+splitmix64";

    explicit RngStream(std::uint64_t raw_seed) : gen_(raw_seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::mt19937_64 gen_;
};

/// raw seed = splitmix64_at(master_seed, realization_index); pure function.
RngStream derive_stream(const SeedSpec& seed);

}  // namespace qwalk
