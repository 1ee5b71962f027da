#include "qwalk/protocols.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "qwalk/errors.hpp"

namespace qwalk {

CoinLabelSequence CoinLabelSequence::parse(std::string_view text) {
    if (text.empty()) throw ConfigError("coin label sequence must not be empty");
    for (char ch : text)
        if (ch != 'H' && ch != 'F')
            throw ConfigError(std::string("unknown coin label '") + ch + "' (expected H or F)");
    CoinLabelSequence s;
    s.labels_ = std::string(text);
    return s;
}

std::vector<CoinMatrix> CoinLabelSequence::coins() const {
    std::vector<CoinMatrix> out;
    out.reserve(labels_.size());
    for (char ch : labels_) out.push_back(ch == 'H' ? hadamard_coin() : fourier_coin());
    return out;
}

WorstCondition worst_initial_condition(const CoinMatrix& coin, double grid_increment, int steps,
                                       int jobs) {
    const auto grid = ConditionGrid::localized_spin_grid(grid_increment);
    const CoinPolicy policy = FixedPolicy{coin};

    // Per-member values land in an index-ordered vector; the argmin scan is
    // serial with strict <, so ties break to the lowest (alpha_s, beta_s)
    // regardless of how many workers evaluated.
    std::vector<double> se(grid.size());
    auto eval_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            WalkConfig cfg;
            cfg.initial = grid.at(i).make_state();
            cfg.policy = policy;
            cfg.steps = steps;
            cfg.record = {"entropy"};
            se[i] = run(cfg).records.back().s_e;
        }
    };
    const auto nworkers = std::max(1, jobs);
    if (nworkers == 1) {
        eval_range(0, grid.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t stride = (grid.size() + nworkers - 1) / nworkers;
        for (std::size_t lo = 0; lo < grid.size(); lo += stride)
            pool.emplace_back(eval_range, lo, std::min(lo + stride, grid.size()));
        for (auto& th : pool) th.join();
    }

    WorstCondition best{0.0, 0.0, 2.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (se[i] < best.s_e) {
            const auto& lp = std::get<LocalizedSpinParams>(grid.at(i).params);
            best = {lp.alpha_s, lp.beta_s, se[i]};
        }
    }
    return best;
}

std::vector<double> evaluate_sequence(const CoinLabelSequence& seq,
                                      const std::vector<std::pair<double, double>>& conditions) {
    const ExplicitSequencePolicy policy{seq.coins()};
    std::vector<double> out;
    out.reserve(conditions.size());
    for (const auto& [alpha_s, beta_s] : conditions) {
        WalkConfig cfg;
        cfg.initial = localized(spin_from_angles(alpha_s, beta_s), 0);
        cfg.policy = policy;
        cfg.steps = static_cast<int>(seq.size());
        cfg.record = {"entropy"};
        out.push_back(run(cfg).records.back().s_e);
    }
    return out;
}

SequenceSearchResult search_best_sequence(int trials, int steps, double p,
                                          std::pair<double, double> target_condition,
                                          SeedSpec seed) {
    if (trials < 1) throw ConfigError("sequence search needs at least one trial");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("sequence search p must lie in [0,1]");

    SequenceSearchResult best;
    best.s_e = -1.0;
    std::string labels(static_cast<std::size_t>(steps), 'H');
    for (int k = 0; k < trials; ++k) {
        RngStream rng = derive_stream({seed.master_seed, seed.realization_index + k});
        for (int t = 0; t < steps; ++t) labels[static_cast<std::size_t>(t)] = rng.uniform() < p ? 'H' : 'F';
        const auto seq = CoinLabelSequence::parse(labels);
        const double se = evaluate_sequence(seq, {target_condition}).front();
        if (se > best.s_e) {
            best.sequence = seq;
            best.s_e = se;
            best.trial_index = k;
        }
    }
    return best;
}

}  // namespace qwalk
