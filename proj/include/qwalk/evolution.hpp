#pragma once

#include <string>
#include <vector>

#include "qwalk/observables.hpp"
#include "qwalk/policy.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

/// Full description of one walk: initial state, coin policy, step count,
/// stream seed and which per-step observables to record ("entropy", "bloch",
/// "moments", "trace_distance"; empty means all).
struct WalkConfig {
    WalkerState initial;
    CoinPolicy policy = FixedPolicy{hadamard_coin()};
    int steps = 1;
    SeedSpec seed;
    std::vector<std::string> record;

    void validate() const;
};

/// One application of S(C x 1): the window grows one site per side,
///   a(j,t) = c_uu a(j-1,t-1) + c_ud b(j-1,t-1)
///   b(j,t) = c_du a(j+1,t-1) + c_dd b(j+1,t-1)
/// Throws ContractError for a non-unitary coin.
WalkerState step(const WalkerState& s, const CoinMatrix& c);

/// In-place stepping engine with preallocated double buffers; recurrence
/// output never aliases its input, buffers are swapped instead of reallocated.
class Walker {
  public:
    Walker(const WalkerState& initial, int total_steps);

    void advance(const CoinMatrix& c);

    std::int64_t t() const { return t0_ + steps_taken_; }
    int steps_taken() const { return steps_taken_; }

    /// Reduced spin state plus the walker norm, one pass over the window.
    struct Reduction {
        ReducedDensity rho;
        double norm;
    };
    Reduction reduce() const;

    Moments moments() const;

    /// up/down when the spin factor is definitely one basis state (within
    /// tol of all weight on one component), none otherwise.
    SpinHint definite_spin(double tol = 1e-9) const;

    /// Copy out the active window [j_min0 - k, j_max0 + k] after k steps.
    WalkerState snapshot() const;

  private:
    std::vector<Complex> a_, b_, next_a_, next_b_;
    std::int64_t slot0_j_ = 0;  // lattice index of buffer slot 0
    std::size_t pad_ = 0;       // active window starts at pad_ - steps_taken_
    std::size_t w0_ = 0;
    int total_steps_ = 0;
    int steps_taken_ = 0;
    std::int64_t t0_ = 0;
};

struct Trajectory {
    std::vector<ObservableRecord> records;  // one per step t = 1..n
    WalkerState final_state;
};

/// Runs the configured walk: coin_at then step for t = 1..steps, recording
/// the requested observables after each step. Identical configs (seed
/// included) produce bit-identical trajectories. Policy errors are rethrown
/// with the failing step index.
Trajectory run(const WalkConfig& cfg);

/// Independent verification path for small instances (steps <= 10): builds
/// the dense matrix of S(C(t) x 1) on the truncated lattice every step and
/// applies it by explicit matrix-vector products. Shares the coin sequence
/// with run() (same seed derivation) but none of the recurrence code.
WalkerState dense_oracle(const WalkConfig& cfg);

}  // namespace qwalk
