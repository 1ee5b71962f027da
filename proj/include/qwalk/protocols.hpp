#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwalk/ensemble.hpp"

namespace qwalk {

/// Ordered H/F coin labels, first label = step 1.
class CoinLabelSequence {
  public:
    static CoinLabelSequence parse(std::string_view text);

    const std::string& text() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    std::vector<CoinMatrix> coins() const;

  private:
    std::string labels_;
};

/// The 28-step H/F sequence reported with the experimental predictions.
inline constexpr std::string_view kPublishedSequence = "HHFHFFHFHFFHFHFHFFHFFHHFHFHH";

struct WorstCondition {
    double alpha_s = 0.0;
    double beta_s = 0.0;
    double s_e = 0.0;
};

/// Scans localized_spin_grid(grid_increment) for the (alpha_s, beta_s)
/// minimizing S_E at step `steps` under the fixed coin. Ties break to the
/// lowest (alpha_s, then beta_s).
WorstCondition worst_initial_condition(const CoinMatrix& coin, double grid_increment, int steps,
                                       int jobs = 1);

/// S_E at step size(seq) for each localized (alpha_s, beta_s) condition.
std::vector<double> evaluate_sequence(const CoinLabelSequence& seq,
                                      const std::vector<std::pair<double, double>>& conditions);

struct SequenceSearchResult {
    CoinLabelSequence sequence;
    double s_e = 0.0;
    int trial_index = 0;
};

/// Draws `trials` random H/F sequences (H with probability p per step; trial
/// k uses SeedSpec{seed.master_seed, seed.realization_index + k}) and returns
/// the first one maximizing S_E at step `steps` for the target condition.
/// The trial enumeration is prefix-stable: growing `trials` never lowers the
/// result.
SequenceSearchResult search_best_sequence(int trials, int steps, double p,
                                          std::pair<double, double> target_condition,
                                          SeedSpec seed);

}  // namespace qwalk
