#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qwalk/errors.hpp"
#include "qwalk/protocols.hpp"

using namespace qwalk;

namespace {
constexpr double kPi = std::numbers::pi;

// independent one-step oracle: after one Hadamard step from a localized
// spin, the up/down supports are disjoint, so gamma = 0 and
// alpha = |a_up + a_down|^2 / 2
double one_step_entropy(double alpha_s, double beta_s) {
    const Complex au(std::cos(alpha_s), 0.0);
    const Complex ad = std::polar(std::sin(alpha_s), beta_s);
    const double alpha = 0.5 * std::norm(au + ad);
    const auto xlx = [](double x) { return x > 0 ? x * std::log2(x) : 0.0; };
    return -xlx(alpha) - xlx(1.0 - alpha);
}
}  // namespace

TEST_CASE("label sequences round-trip through text") {
    const auto seq = CoinLabelSequence::parse("HHFH");
    CHECK(seq.text() == "HHFH");
    CHECK(seq.size() == 4);
    CHECK(seq.coins().size() == 4);
    CHECK_THROWS_AS(CoinLabelSequence::parse("HHXH"), ConfigError);
    CHECK_THROWS_AS(CoinLabelSequence::parse(""), ConfigError);
}

TEST_CASE("published 28-step sequence against the five reference conditions") {
    const auto seq = CoinLabelSequence::parse(kPublishedSequence);
    REQUIRE(seq.size() == 28);
    const std::vector<std::pair<double, double>> conds = {
        {2.7, kPi}, {2.7, 0.0}, {2.7, kPi / 2}, {2.7, -kPi / 2}, {2.7, -kPi}};

    const auto se_seq = evaluate_sequence(seq, conds);
    CHECK(se_seq[0] == doctest::Approx(0.999).epsilon(0.0011));
    CHECK(se_seq[1] == doctest::Approx(0.979).epsilon(0.0011));
    CHECK(se_seq[2] == doctest::Approx(0.938).epsilon(0.0011));
    CHECK(se_seq[3] == doctest::Approx(0.982).epsilon(0.0011));
    CHECK(se_seq[4] == se_seq[0]);  // beta_s = +-pi give the same state

    const auto se_h = evaluate_sequence(CoinLabelSequence::parse(std::string(28, 'H')), conds);
    CHECK(se_h[0] == doctest::Approx(0.645).epsilon(0.0016));
    CHECK(se_h[1] == doctest::Approx(0.983).epsilon(0.0011));
    CHECK(se_h[2] == doctest::Approx(0.869).epsilon(0.0011));
    CHECK(se_h[3] == doctest::Approx(0.869).epsilon(0.0011));
}

TEST_CASE("all-H sequence agrees with the fixed Hadamard policy") {
    const auto seq = CoinLabelSequence::parse(std::string(12, 'H'));
    const std::vector<std::pair<double, double>> conds = {{0.0, 0.0}, {1.1, 0.7}, {2.7, kPi}};
    const auto via_seq = evaluate_sequence(seq, conds);
    for (std::size_t i = 0; i < conds.size(); ++i) {
        WalkConfig cfg;
        cfg.initial = localized(spin_from_angles(conds[i].first, conds[i].second), 0);
        cfg.policy = FixedPolicy{hadamard_coin()};
        cfg.steps = 12;
        CHECK(via_seq[i] == run(cfg).records.back().s_e);
    }
}

TEST_CASE("worst initial condition: right mover ties break to (0, 0)") {
    const auto worst = worst_initial_condition(identity_coin(), 1.0, 6);
    CHECK(worst.alpha_s == 0.0);
    CHECK(worst.beta_s == 0.0);
    CHECK(worst.s_e == doctest::Approx(0.0));
}

TEST_CASE("worst initial condition at n=1 matches the closed-form argmin") {
    const auto got = worst_initial_condition(hadamard_coin(), 0.3, 1);
    double best_se = 2.0;
    double best_a = 0.0, best_b = 0.0;
    for (int ia = 0;; ++ia) {
        const double a = 0.3 * ia;
        if (a > kPi + 1e-9) break;
        for (int ib = 0;; ++ib) {
            const double b = 0.3 * ib;
            if (b > 2 * kPi + 1e-9) break;
            const double se = one_step_entropy(a, b);
            if (se < best_se) {
                best_se = se;
                best_a = a;
                best_b = b;
            }
        }
    }
    CHECK(got.alpha_s == doctest::Approx(best_a));
    CHECK(got.beta_s == doctest::Approx(best_b));
    CHECK(got.s_e == doctest::Approx(best_se).epsilon(1e-12));
}

TEST_CASE("Hadamard 28-step grid minimum sits one cell from (2.7, pi)") {
    const auto worst = worst_initial_condition(hadamard_coin(), 0.1, 28, 2);
    CHECK(worst.alpha_s == doctest::Approx(2.7).epsilon(1e-12));
    CHECK(std::abs(worst.beta_s - kPi) <= 0.1);
    CHECK(worst.s_e == doctest::Approx(0.645).epsilon(0.0025));
}

TEST_CASE("sequence search") {
    SUBCASE("one trial is just evaluate_sequence on the drawn labels") {
        const auto r = search_best_sequence(1, 10, 0.5, {2.7, kPi}, {11, 0});
        CHECK(r.trial_index == 0);
        CHECK(r.s_e == evaluate_sequence(r.sequence, {{2.7, kPi}}).front());
    }
    SUBCASE("deterministic given the seed, monotone in trials") {
        const auto a = search_best_sequence(40, 8, 0.5, {2.7, kPi}, {5, 0});
        const auto b = search_best_sequence(40, 8, 0.5, {2.7, kPi}, {5, 0});
        CHECK(a.sequence.text() == b.sequence.text());
        CHECK(a.s_e == b.s_e);
        const auto more = search_best_sequence(120, 8, 0.5, {2.7, kPi}, {5, 0});
        CHECK(more.s_e >= a.s_e);
    }
    SUBCASE("never beats, and with enough draws matches, the exhaustive optimum") {
        // brute force over all 2^4 sequences of length 4
        double true_best = -1.0;
        for (int mask = 0; mask < 16; ++mask) {
            std::string labels;
            for (int b = 0; b < 4; ++b) labels += (mask >> b) & 1 ? 'H' : 'F';
            const double se =
                evaluate_sequence(CoinLabelSequence::parse(labels), {{2.7, kPi}}).front();
            true_best = std::max(true_best, se);
        }
        const auto few = search_best_sequence(50, 4, 0.5, {2.7, kPi}, {7, 0});
        CHECK(few.s_e <= true_best + 1e-15);
        const auto many = search_best_sequence(400, 4, 0.5, {2.7, kPi}, {7, 0});
        CHECK(many.s_e == doctest::Approx(true_best).epsilon(1e-14));
    }
    SUBCASE("rejects bad arguments") {
        CHECK_THROWS_AS(search_best_sequence(0, 4, 0.5, {0, 0}, {1, 0}), ConfigError);
        CHECK_THROWS_AS(search_best_sequence(5, 4, 1.5, {0, 0}, {1, 0}), ConfigError);
    }
}
