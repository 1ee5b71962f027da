#pragma once

#include <variant>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

/// One coin parameter of a ContinuousRandom policy: either pinned to a value
/// or drawn uniformly from [lo, hi] each step.
struct ParamSpec {
    double lo = 0.0;
    double hi = 0.0;

    static ParamSpec fixed(double v) { return {v, v}; }
    static ParamSpec uniform(double lo, double hi) { return {lo, hi}; }
    bool is_fixed() const { return lo == hi; }
};

struct FixedPolicy {
    CoinMatrix coin;
};

/// Classical coin picks c1 with probability p, else c2, at every step.
struct BinaryRandomPolicy {
    CoinMatrix c1, c2;
    double p = 0.5;
};

/// Coin parameters drawn independently each step; draw order is frozen as
/// q, theta, phi (one uniform per non-fixed parameter).
struct ContinuousRandomPolicy {
    ParamSpec q = ParamSpec::uniform(0.0, 1.0);
    ParamSpec theta;
    ParamSpec phi;
};

/// q = 1/2, theta = phi = (pi/2)|sin(pi t / T)|: sweeps smoothly between the
/// Hadamard and Fourier coins with period T.
struct PeriodicSmoothPolicy {
    int period = 2;
};

/// Hadamard on the first step of each period, Fourier on the remaining T-1.
struct PeriodicAlternatingPolicy {
    int period = 2;
};

struct ExplicitSequencePolicy {
    std::vector<CoinMatrix> coins;  // coins[t-1] applies at step t
};

/// Classical-walk embedding: a heads draw (probability p) moves the walker
/// right, tails moves it left, by choosing identity or sigma1 against the
/// walker's current definite spin.
struct CrwEmulationPolicy {
    double p = 0.5;
};

using CoinPolicy = std::variant<FixedPolicy, BinaryRandomPolicy, ContinuousRandomPolicy,
                                PeriodicSmoothPolicy, PeriodicAlternatingPolicy,
                                ExplicitSequencePolicy, CrwEmulationPolicy>;

enum class SpinHint { none, up, down };

/// Checks the policy invariants (probabilities and parameter ranges legal,
/// explicit sequences long enough for `steps`). Throws ConfigError.
void validate_policy(const CoinPolicy& policy, int steps);

/// Number of uniforms consumed per step, part of the reproducibility
/// contract: Fixed/Periodic*/ExplicitSequence 0, BinaryRandom 1,
/// CrwEmulation 1, ContinuousRandom one per non-fixed parameter.
int draws_per_step(const CoinPolicy& policy);

/// Coin for step t >= 1. CrwEmulation requires a definite spin_hint and
/// throws ContractError otherwise; deterministic policies ignore the stream.
CoinMatrix coin_at(const CoinPolicy& policy, int t, RngStream& rng,
                   SpinHint spin_hint = SpinHint::none);

bool is_deterministic(const CoinPolicy& policy);

const char* policy_kind_name(const CoinPolicy& policy);

}  // namespace qwalk
