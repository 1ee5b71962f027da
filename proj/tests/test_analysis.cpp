#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qwalk/analysis.hpp"
#include "qwalk/ensemble.hpp"
#include "qwalk/errors.hpp"

using namespace qwalk;

namespace {

Series power_law(double a, double b, int n, double wiggle = 0.0) {
    Series s;
    for (int t = 1; t <= n; ++t) {
        const double y = a * std::pow(t, b) * (1.0 + wiggle * std::sin(3.7 * t));
        s.push_back({static_cast<double>(t), y});
    }
    return s;
}

}  // namespace

TEST_CASE("an exact power law is recovered to machine precision") {
    const Series s = power_law(0.5, -0.5, 100);
    for (int t_min : {1, 10, 50}) {
        const FitResult r = loglog_fit(s, t_min);
        CHECK(r.slope == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(r.intercept == doctest::Approx(std::log(0.5)).epsilon(1e-12));
        CHECK(r.r_squared == doctest::Approx(1.0));
        CHECK(r.t_min_used == t_min);
        CHECK(r.slope_ci_95.first <= r.slope);
        CHECK(r.slope <= r.slope_ci_95.second);
    }
}

TEST_CASE("fixed-exponent prefactor on exact data") {
    const Series s = power_law(0.4977, -0.25, 200);
    const PrefactorResult r = fixed_exponent_prefactor(s, -0.25, 1);
    CHECK(r.prefactor == doctest::Approx(0.4977).epsilon(1e-12));
}

TEST_CASE("dispersion exponent classifies sqrt growth") {
    Series s;
    for (int t = 1; t <= 500; ++t) s.push_back({static_cast<double>(t), std::sqrt(t)});
    const FitResult r = dispersion_exponent(s, 1);
    CHECK(r.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(classify_dispersion(r.slope) == doctest::String("diffusive"));
    CHECK(classify_dispersion(1.02) == doctest::String("ballistic"));
    CHECK(classify_dispersion(0.75) == doctest::String("other"));
}

TEST_CASE("confidence intervals shrink with more points") {
    const Series s = power_law(1.0, -0.5, 1000, 0.01);
    const FitResult narrow = loglog_fit(s, 1);
    Series head(s.begin(), s.begin() + 30);
    const FitResult wide = loglog_fit(head, 1);
    CHECK(narrow.slope_ci_95.second - narrow.slope_ci_95.first <
          wide.slope_ci_95.second - wide.slope_ci_95.first);
    CHECK(narrow.points_used == 1000);
    CHECK(wide.points_used == 30);
}

TEST_CASE("rescaling t changes only the intercept") {
    const Series s = power_law(2.0, -0.75, 400, 0.005);
    Series scaled;
    for (const auto& [t, y] : s) scaled.push_back({3.0 * t, y});
    const FitResult a = loglog_fit(s, 1);
    const FitResult b = loglog_fit(scaled, 1);
    CHECK(a.slope == doctest::Approx(b.slope).epsilon(1e-12));
    CHECK(a.intercept != doctest::Approx(b.intercept).epsilon(1e-6));
}

TEST_CASE("domain errors") {
    Series bad = power_law(1.0, -0.5, 10);
    bad[3].second = 0.0;
    CHECK_THROWS_AS(loglog_fit(bad, 1), ConfigError);
    bad[3].second = -2.0;
    CHECK_THROWS_AS(loglog_fit(bad, 1), ConfigError);

    const Series tiny = power_law(1.0, -0.5, 2);
    CHECK_THROWS_AS(loglog_fit(tiny, 1), ConfigError);
    const Series ok = power_law(1.0, -0.5, 100);
    CHECK_THROWS_AS(loglog_fit(ok, 99), ConfigError);  // two points left
    CHECK_THROWS_AS(fixed_exponent_prefactor(tiny, -0.5, 1), ConfigError);
}

TEST_CASE("series_from_steps indexes from t = 1") {
    const std::vector<double> y = {4.0, 3.0, 2.0};
    const Series s = series_from_steps(y);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == std::pair<double, double>{1.0, 4.0});
    CHECK(s[2] == std::pair<double, double>{3.0, 2.0});
}

TEST_CASE("dropping the transient moves walk slopes toward the asymptote") {
    // small-scale version of the Fig. B1 observation: fits with t_min=100 sit
    // closer to the theoretical exponents than full-range fits
    constexpr int kConds = 50;
    constexpr int kSteps = 400;
    std::vector<Condition> conds;
    RngStream rng = derive_stream({864213, 0});
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < kConds; ++i)
        conds.push_back({i, TwoSiteParams{rng.uniform(0, pi), rng.uniform(0, 2 * pi),
                                          rng.uniform(0, pi), rng.uniform(0, 2 * pi)}});

    EnsembleSpec spec;
    spec.grid = ConditionGrid::explicit_list(conds);
    spec.steps = kSteps;
    spec.master_seed = 4321;
    spec.jobs = 2;
    spec.record_moments = false;
    spec.record_distribution = false;

    spec.policy = FixedPolicy{hadamard_coin()};
    const auto hadamard = run_ensemble(spec);
    ContinuousRandomPolicy cr;
    cr.q = ParamSpec::uniform(0, 1);
    cr.theta = ParamSpec::uniform(0, pi);
    cr.phi = ParamSpec::uniform(0, 2 * pi);
    spec.policy = cr;
    const auto disordered = run_ensemble(spec);

    const auto check_approach = [](const std::vector<double>& series, double theory) {
        const Series s = series_from_steps(series);
        const double early = loglog_fit(s, 1).slope;
        const double late = loglog_fit(s, 100).slope;
        CHECK(std::abs(late - theory) <= std::abs(early - theory));
    };
    check_approach(hadamard.mean_trace_distance, -0.5);
    check_approach(disordered.mean_trace_distance, -0.25);
}
