#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qwalk/errors.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/observables.hpp"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;

SpinVector up_spin() { return {Complex(1, 0), Complex(0, 0)}; }

double max_amplitude_diff(const WalkerState& a, const WalkerState& b) {
    REQUIRE(a.j_min == b.j_min);
    REQUIRE(a.width() == b.width());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.width(); ++k) {
        worst = std::max(worst, std::abs(a.up[k] - b.up[k]));
        worst = std::max(worst, std::abs(a.down[k] - b.down[k]));
    }
    return worst;
}

CoinPolicy nth_test_policy(int i, RngStream& rng) {
    switch (i % 5) {
        case 0: {
            ContinuousRandomPolicy p;
            p.q = ParamSpec::uniform(0, 1);
            p.theta = ParamSpec::uniform(0, 2 * kPi);
            p.phi = ParamSpec::uniform(0, 2 * kPi);
            return p;
        }
        case 1: return BinaryRandomPolicy{hadamard_coin(), fourier_coin(), rng.uniform()};
        case 2: return PeriodicSmoothPolicy{2 + (i % 7)};
        case 3: return PeriodicAlternatingPolicy{1 + (i % 4)};
        default:
            return FixedPolicy{coin_from_params(
                {rng.uniform(), rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi)})};
    }
}

}  // namespace

TEST_CASE("identity coin moves an up walker right") {
    WalkerState s = localized(up_spin(), 0);
    s = step(s, identity_coin());
    CHECK(s.t == 1);
    CHECK(s.j_min == -1);
    const auto d = position_distribution(s);
    CHECK(d.at(1) == doctest::Approx(1.0));
    CHECK(entropy(reduce(s)) < 1e-15);
}

TEST_CASE("one Hadamard step from |up, 0>") {
    const WalkerState s = step(localized(up_spin(), 0), hadamard_coin());
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.up[2] - Complex(r, 0)) < 1e-15);    // a(+1)
    CHECK(std::abs(s.down[0] - Complex(r, 0)) < 1e-15);  // b(-1)
    CHECK(std::abs(s.up[0]) == 0.0);
    CHECK(entropy(reduce(s)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("step rejects a non-unitary coin") {
    const CoinMatrix bogus{Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0)};
    CHECK_THROWS_AS(step(localized(up_spin(), 0), bogus), ContractError);
}

TEST_CASE("run with a fixed right-mover: position n, S_E stays 0") {
    WalkConfig cfg;
    cfg.initial = localized(up_spin(), 0);
    cfg.policy = FixedPolicy{identity_coin()};
    cfg.steps = 5;
    const Trajectory traj = run(cfg);
    CHECK(traj.records.size() == 5);
    for (const auto& rec : traj.records) CHECK(rec.s_e < 1e-15);
    CHECK(*traj.records.back().mean_j == doctest::Approx(5.0));
    CHECK(*traj.records.back().variance == doctest::Approx(0.0));
}

TEST_CASE("run is bit-deterministic for equal configs") {
    ContinuousRandomPolicy p;
    p.theta = ParamSpec::uniform(0, 2 * kPi);
    p.phi = ParamSpec::uniform(0, 2 * kPi);
    WalkConfig cfg;
    cfg.initial = two_site(0.7, 1.3, 2.1, 4.4);
    cfg.policy = p;
    cfg.steps = 200;
    cfg.seed = {99, 17};
    const Trajectory a = run(cfg);
    const Trajectory b = run(cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        REQUIRE(a.records[k].s_e == b.records[k].s_e);
        REQUIRE(a.records[k].alpha == b.records[k].alpha);
        REQUIRE(a.records[k].gamma == b.records[k].gamma);
        REQUIRE(*a.records[k].trace_distance == *b.records[k].trace_distance);
    }
    CHECK(max_amplitude_diff(a.final_state, b.final_state) == 0.0);
}

TEST_CASE("light cone: the window after n steps is the initial one widened by n") {
    WalkConfig cfg;
    cfg.initial = two_site(0.3, 0.4, 0.5, 0.6);
    cfg.policy = FixedPolicy{hadamard_coin()};
    cfg.steps = 17;
    const Trajectory traj = run(cfg);
    CHECK(traj.final_state.j_min == -1 - 17);
    CHECK(traj.final_state.j_max() == 1 + 17);
    CHECK(std::abs(traj.final_state.norm() - 1.0) < 1e-12);  // no mass escaped
}

TEST_CASE("coin policy failures carry the step index") {
    WalkConfig cfg;
    // superposed spin breaks the classical embedding immediately
    cfg.initial = localized(spin_from_angles(0.7, 0.0), 0);
    cfg.policy = CrwEmulationPolicy{0.5};
    cfg.steps = 3;
    CHECK_THROWS_WITH_AS(run(cfg), doctest::Contains("step 1"), ContractError);
}

TEST_CASE("dense oracle: one Hadamard step matches the analytic values") {
    WalkConfig cfg;
    cfg.initial = localized(up_spin(), 0);
    cfg.policy = FixedPolicy{hadamard_coin()};
    cfg.steps = 1;
    const WalkerState s = dense_oracle(cfg);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(s.j_min == -1);
    CHECK(std::abs(s.up[2] - Complex(r, 0)) < 1e-15);
    CHECK(std::abs(s.down[0] - Complex(r, 0)) < 1e-15);
}

TEST_CASE("dense oracle equals run amplitude-by-amplitude") {
    SUBCASE("3-step Hadamard") {
        WalkConfig cfg;
        cfg.initial = localized(up_spin(), 0);
        cfg.policy = FixedPolicy{hadamard_coin()};
        cfg.steps = 3;
        CHECK(max_amplitude_diff(run(cfg).final_state, dense_oracle(cfg)) < 1e-12);
    }
    SUBCASE("5-step continuous random with a shared seed") {
        ContinuousRandomPolicy p;
        p.theta = ParamSpec::uniform(0, 2 * kPi);
        p.phi = ParamSpec::uniform(0, 2 * kPi);
        WalkConfig cfg;
        cfg.initial = two_site(1.1, 0.2, 2.2, 3.3);
        cfg.policy = p;
        cfg.steps = 5;
        cfg.seed = {2024, 3};
        CHECK(max_amplitude_diff(run(cfg).final_state, dense_oracle(cfg)) < 1e-12);
    }
}

TEST_CASE("dense oracle equivalence across 100 random seeds and policies, n <= 8") {
    RngStream meta = derive_stream({606060, 0});
    for (int i = 0; i < 100; ++i) {
        WalkConfig cfg;
        cfg.policy = nth_test_policy(i, meta);
        cfg.steps = 1 + static_cast<int>(meta.next_u64() % 8);
        cfg.seed = {meta.next_u64(), 0};
        if (i % 3 == 0)
            cfg.initial = localized(spin_from_angles(meta.uniform(0, kPi),
                                                     meta.uniform(0, 2 * kPi)), 0);
        else
            cfg.initial = two_site(meta.uniform(0, kPi), meta.uniform(0, 2 * kPi),
                                   meta.uniform(0, kPi), meta.uniform(0, 2 * kPi));
        CAPTURE(i);
        REQUIRE(max_amplitude_diff(run(cfg).final_state, dense_oracle(cfg)) < 1e-12);
    }
}

TEST_CASE("dense oracle covers the classical embedding too") {
    WalkConfig cfg;
    cfg.initial = localized(up_spin(), 0);
    cfg.policy = CrwEmulationPolicy{0.5};
    cfg.steps = 8;
    cfg.seed = {77, 4};
    CHECK(max_amplitude_diff(run(cfg).final_state, dense_oracle(cfg)) < 1e-14);
}

TEST_CASE("dense oracle refuses big instances") {
    WalkConfig cfg;
    cfg.initial = localized(up_spin(), 0);
    cfg.policy = FixedPolicy{hadamard_coin()};
    cfg.steps = 11;
    CHECK_THROWS_AS(dense_oracle(cfg), ContractError);
}

TEST_CASE("norm drift stays below 1e-13 per step (2000-step soak)") {
    ContinuousRandomPolicy p;
    p.theta = ParamSpec::uniform(0, 2 * kPi);
    p.phi = ParamSpec::uniform(0, 2 * kPi);
    const CoinPolicy policy = p;
    RngStream rng = derive_stream({515151, 0});
    Walker walker(localized(spin_from_angles(1.0, 0.5), 0), 2000);
    double prev = walker.reduce().norm;
    for (int t = 1; t <= 2000; ++t) {
        walker.advance(coin_at(policy, t, rng));
        const double now = walker.reduce().norm;
        REQUIRE(std::abs(now - prev) < 1e-13);
        prev = now;
    }
    CHECK(std::abs(prev - 1.0) < 1e-12);
}

TEST_CASE("walker snapshot round-trips through step()") {
    // step() is the one-shot form of Walker::advance
    const WalkerState s0 = two_site(0.4, 0.8, 1.2, 1.6);
    Walker w(s0, 2);
    w.advance(hadamard_coin());
    w.advance(fourier_coin());
    WalkerState via_steps = step(step(s0, hadamard_coin()), fourier_coin());
    CHECK(max_amplitude_diff(w.snapshot(), via_steps) == 0.0);
    CHECK(w.snapshot().t == 2);
}
