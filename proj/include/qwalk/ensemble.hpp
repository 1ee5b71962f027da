#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/evolution.hpp"

namespace qwalk {

struct TwoSiteParams {
    double alpha_s, beta_s, alpha_p, beta_p;
};

struct LocalizedSpinParams {
    double alpha_s, beta_s;
    std::int64_t j0 = 0;
};

struct GaussianParams {
    SpinVector spin;
    double sigma;
    std::int64_t cutoff = 0;  // 0 means the ceil(6 sigma) default
};

/// One initial condition of an ensemble. `index` is the position in the
/// full (unsubsampled) grid; member seeds derive from it, so a condition's
/// trajectory is identical whether it runs in the full ensemble, a
/// subsampled one, or alone.
struct Condition {
    std::size_t index = 0;
    std::variant<TwoSiteParams, LocalizedSpinParams, GaussianParams, WalkerState> params;

    WalkerState make_state() const;
    std::pair<std::int64_t, std::int64_t> window_bounds() const;
};

/// The paper's initial-condition families, enumerated row-major starting at
/// all-zeros and stepping by the increment while each coordinate stays at or
/// below its endpoint (alpha <= pi, beta <= 2 pi).
class ConditionGrid {
  public:
    static ConditionGrid two_site_grid(double increment);
    static ConditionGrid localized_spin_grid(double increment);
    /// For each sigma, one member per spin.
    static ConditionGrid gaussian_set(const std::vector<double>& sigmas,
                                      const std::vector<SpinVector>& spins);
    static ConditionGrid explicit_list(std::vector<Condition> conditions);

    /// Every k-th member (by grid position), original indices retained.
    ConditionGrid subsample(std::size_t every_kth) const;

    std::size_t size() const { return members_.size(); }
    const Condition& at(std::size_t i) const { return members_[i]; }
    const std::string& kind() const { return kind_; }
    std::size_t full_size() const { return full_size_; }
    std::size_t subsample_factor() const { return subsample_factor_; }

  private:
    std::vector<Condition> members_;
    std::string kind_ = "explicit";
    std::size_t full_size_ = 0;
    std::size_t subsample_factor_ = 1;
};

struct EnsembleSpec {
    ConditionGrid grid;
    CoinPolicy policy = FixedPolicy{hadamard_coin()};
    int steps = 1;
    std::uint64_t master_seed = 1;
    int realizations_per_condition = 1;
    std::vector<double> thresholds = {0.95, 0.97, 0.99};
    /// Draw a single coin sequence from (master_seed, 0) and reuse it for
    /// every member instead of one fresh sequence per member.
    bool shared_sequence = false;
    int jobs = 1;
    bool record_moments = true;
    bool record_distribution = true;

    void validate() const;
};

/// Per-step aggregates over all (condition, realization) members.
struct EnsembleSummary {
    int steps = 0;
    std::size_t members = 0;
    std::vector<double> thresholds;
    std::vector<double> mean_s_e, min_s_e, max_s_e;
    std::vector<double> mean_dispersion;                  // <sqrt(sigma^2)>
    std::vector<double> mean_trace_distance;              // <D(t)>
    std::vector<std::vector<double>> fraction_above;      // [threshold][step]
    PositionDistribution mean_final_distribution;

    double final_fraction_above(std::size_t threshold_idx) const;
};

/// Runs every (condition, realization) pair; member (i, r) uses
/// SeedSpec{master_seed, i*realizations_per_condition + r} with i the
/// condition's full-grid index. Partials merge in fixed member order, so
/// results are identical for any worker count. A member failure aborts the
/// run with the (condition, realization, step) context.
EnsembleSummary run_ensemble(const EnsembleSpec& spec);

struct AsymptoticRange {
    double min_s_e, max_s_e;
};

/// Extremes of final-step S_E over the grid under a deterministic policy.
AsymptoticRange asymptotic_range(const CoinPolicy& policy, const ConditionGrid& grid, int steps,
                                 int jobs = 1);

}  // namespace qwalk
