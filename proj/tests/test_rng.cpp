#include <doctest.h>

#include <vector>

#include "qwalk/rng.hpp"

using namespace qwalk;

namespace {
std::vector<double> first_uniforms(SeedSpec seed, int n) {
    RngStream s = derive_stream(seed);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(s.uniform());
    return out;
}
}  // namespace

TEST_CASE("derive_stream is a pure function of (master_seed, realization_index)") {
    CHECK(first_uniforms({7, 0}, 100) == first_uniforms({7, 0}, 100));
}

TEST_CASE("distinct realization indices give distinct streams") {
    CHECK(first_uniforms({7, 0}, 1) != first_uniforms({7, 1}, 1));
    CHECK(first_uniforms({7, 0}, 1) != first_uniforms({8, 0}, 1));
}

TEST_CASE("uniforms stay in [0,1)") {
    RngStream s = derive_stream({123, 5});
    for (int i = 0; i < 10000; ++i) {
        const double u = s.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("ranged uniform maps into [lo, hi)") {
    RngStream s = derive_stream({9, 9});
    for (int i = 0; i < 1000; ++i) {
        const double u = s.uniform(2.0, 5.0);
        CHECK(u >= 2.0);
        CHECK(u < 5.0);
    }
}

TEST_CASE("splitmix64_at separates nearby inputs") {
    CHECK(splitmix64_at(0, 0) == splitmix64_at(0, 0));
    CHECK(splitmix64_at(0, 0) != splitmix64_at(0, 1));
    CHECK(splitmix64_at(0, 0) != splitmix64_at(1, 0));
}
