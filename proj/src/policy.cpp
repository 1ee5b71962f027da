#include "qwalk/policy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
}

void check_range(const ParamSpec& s, double lo_legal, double hi_legal, const char* what) {
    if (!(s.lo <= s.hi))
        throw ConfigError(std::string(what) + " range must satisfy lo <= hi");
    if (!(s.lo >= lo_legal && s.hi <= hi_legal))
        throw ConfigError(std::string(what) + " range outside the legal interval");
}

}  // namespace

void validate_policy(const CoinPolicy& policy, int steps) {
    if (steps < 1) throw ConfigError("step count must be >= 1");
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FixedPolicy>) {
                if (!p.coin.is_unitary()) throw ConfigError("fixed coin is not unitary");
            } else if constexpr (std::is_same_v<T, BinaryRandomPolicy>) {
                check_prob(p.p, "binary policy p");
                if (!p.c1.is_unitary() || !p.c2.is_unitary())
                    throw ConfigError("binary policy coin is not unitary");
            } else if constexpr (std::is_same_v<T, ContinuousRandomPolicy>) {
                check_range(p.q, 0.0, 1.0, "q");
                check_range(p.theta, 0.0, kTwoPi, "theta");
                check_range(p.phi, 0.0, kTwoPi, "phi");
            } else if constexpr (std::is_same_v<T, PeriodicSmoothPolicy> ||
                                 std::is_same_v<T, PeriodicAlternatingPolicy>) {
                if (p.period < 1) throw ConfigError("period T must be a positive integer");
            } else if constexpr (std::is_same_v<T, ExplicitSequencePolicy>) {
                if (p.coins.size() < static_cast<std::size_t>(steps))
                    throw ConfigError("explicit coin sequence shorter than the requested " +
                                      std::to_string(steps) + " steps");
                for (const auto& c : p.coins)
                    if (!c.is_unitary()) throw ConfigError("sequence coin is not unitary");
            } else if constexpr (std::is_same_v<T, CrwEmulationPolicy>) {
                check_prob(p.p, "crw policy p");
            }
        },
        policy);
}

int draws_per_step(const CoinPolicy& policy) {
    return std::visit(
        [](const auto& p) -> int {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BinaryRandomPolicy> ||
                          std::is_same_v<T, CrwEmulationPolicy>) {
                return 1;
            } else if constexpr (std::is_same_v<T, ContinuousRandomPolicy>) {
                return (p.q.is_fixed() ? 0 : 1) + (p.theta.is_fixed() ? 0 : 1) +
                       (p.phi.is_fixed() ? 0 : 1);
            } else {
                return 0;
            }
        },
        policy);
}

bool is_deterministic(const CoinPolicy& policy) {
    return draws_per_step(policy) == 0 && !std::holds_alternative<CrwEmulationPolicy>(policy);
}

const char* policy_kind_name(const CoinPolicy& policy) {
    struct Namer {
        const char* operator()(const FixedPolicy&) { return "fixed"; }
        const char* operator()(const BinaryRandomPolicy&) { return "binary"; }
        const char* operator()(const ContinuousRandomPolicy&) { return "continuous"; }
        const char* operator()(const PeriodicSmoothPolicy&) { return "periodic-smooth"; }
        const char* operator()(const PeriodicAlternatingPolicy&) { return "periodic-alternating"; }
        const char* operator()(const ExplicitSequencePolicy&) { return "sequence"; }
        const char* operator()(const CrwEmulationPolicy&) { return "crw"; }
    };
    return std::visit(Namer{}, policy);
}

CoinMatrix coin_at(const CoinPolicy& policy, int t, RngStream& rng, SpinHint spin_hint) {
    if (t < 1) throw ContractError("step index must be >= 1");
    return std::visit(
        [&](const auto& p) -> CoinMatrix {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FixedPolicy>) {
                return p.coin;
            } else if constexpr (std::is_same_v<T, BinaryRandomPolicy>) {
                return rng.uniform() < p.p ? p.c1 : p.c2;
            } else if constexpr (std::is_same_v<T, ContinuousRandomPolicy>) {
                CoinParams cp;  // draw order q, theta, phi is frozen
                cp.q = p.q.is_fixed() ? p.q.lo : rng.uniform(p.q.lo, p.q.hi);
                cp.theta = p.theta.is_fixed() ? p.theta.lo : rng.uniform(p.theta.lo, p.theta.hi);
                cp.phi = p.phi.is_fixed() ? p.phi.lo : rng.uniform(p.phi.lo, p.phi.hi);
                return coin_from_params(cp);
            } else if constexpr (std::is_same_v<T, PeriodicSmoothPolicy>) {
                const double theta =
                    (std::numbers::pi / 2.0) *
                    std::abs(std::sin(std::numbers::pi * static_cast<double>(t) / p.period));
                return coin_from_params({0.5, theta, theta});
            } else if constexpr (std::is_same_v<T, PeriodicAlternatingPolicy>) {
                // U_F^{T-1} U_H per period, time flowing left to right.
                return (t - 1) % p.period == 0 ? hadamard_coin() : fourier_coin();
            } else if constexpr (std::is_same_v<T, ExplicitSequencePolicy>) {
                if (static_cast<std::size_t>(t) > p.coins.size())
                    throw ContractError("explicit sequence exhausted at step " + std::to_string(t));
                return p.coins[static_cast<std::size_t>(t) - 1];
            } else {  // CrwEmulationPolicy
                if (spin_hint == SpinHint::none)
                    throw ContractError(
                        "CRW emulation requires a walker in a definite spin state (step " +
                        std::to_string(t) + ")");
                const bool heads = rng.uniform() < p.p;
                const bool up = spin_hint == SpinHint::up;
                // heads moves right, tails moves left
                return (heads == up) ? identity_coin() : sigma1_coin();
            }
        },
        policy);
}

}  // namespace qwalk
