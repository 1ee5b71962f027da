#include "qwalk/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

// Axis point count for values {0, inc, 2 inc, ...} <= endpoint.
std::size_t axis_count(double endpoint, double inc) {
    if (!(inc > 0.0)) throw ConfigError("grid increment must be positive");
    return static_cast<std::size_t>(std::floor(endpoint / inc + 1e-9)) + 1;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

WalkerState Condition::make_state() const {
    return std::visit(
        [](const auto& p) -> WalkerState {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TwoSiteParams>) {
                return two_site(p.alpha_s, p.beta_s, p.alpha_p, p.beta_p);
            } else if constexpr (std::is_same_v<T, LocalizedSpinParams>) {
                return localized(spin_from_angles(p.alpha_s, p.beta_s), p.j0);
            } else if constexpr (std::is_same_v<T, GaussianParams>) {
                return gaussian(p.spin, p.sigma, p.cutoff);
            } else {
                return p;
            }
        },
        params);
}

std::pair<std::int64_t, std::int64_t> Condition::window_bounds() const {
    return std::visit(
        [](const auto& p) -> std::pair<std::int64_t, std::int64_t> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TwoSiteParams>) {
                return {-1, 1};
            } else if constexpr (std::is_same_v<T, LocalizedSpinParams>) {
                return {p.j0, p.j0};
            } else if constexpr (std::is_same_v<T, GaussianParams>) {
                const std::int64_t c =
                    p.cutoff > 0 ? p.cutoff : static_cast<std::int64_t>(std::ceil(6.0 * p.sigma));
                return {-c, c};
            } else {
                return {p.j_min, p.j_max()};
            }
        },
        params);
}

ConditionGrid ConditionGrid::two_site_grid(double increment) {
    const std::size_t na = axis_count(kPi, increment);
    const std::size_t nb = axis_count(2.0 * kPi, increment);
    ConditionGrid g;
    g.kind_ = "two-site";
    g.members_.reserve(na * nb * na * nb);
    std::size_t idx = 0;
    for (std::size_t ia = 0; ia < na; ++ia)
        for (std::size_t ib = 0; ib < nb; ++ib)
            for (std::size_t ja = 0; ja < na; ++ja)
                for (std::size_t jb = 0; jb < nb; ++jb)
                    g.members_.push_back({idx++, TwoSiteParams{ia * increment, ib * increment,
                                                               ja * increment, jb * increment}});
    g.full_size_ = g.members_.size();
    return g;
}

ConditionGrid ConditionGrid::localized_spin_grid(double increment) {
    const std::size_t na = axis_count(kPi, increment);
    const std::size_t nb = axis_count(2.0 * kPi, increment);
    ConditionGrid g;
    g.kind_ = "localized-spin";
    g.members_.reserve(na * nb);
    std::size_t idx = 0;
    for (std::size_t ia = 0; ia < na; ++ia)
        for (std::size_t ib = 0; ib < nb; ++ib)
            g.members_.push_back({idx++, LocalizedSpinParams{ia * increment, ib * increment, 0}});
    g.full_size_ = g.members_.size();
    return g;
}

ConditionGrid ConditionGrid::gaussian_set(const std::vector<double>& sigmas,
                                          const std::vector<SpinVector>& spins) {
    if (sigmas.empty() || spins.empty()) throw ConfigError("gaussian set must not be empty");
    ConditionGrid g;
    g.kind_ = "gaussian";
    std::size_t idx = 0;
    for (double sigma : sigmas)
        for (const auto& spin : spins)
            g.members_.push_back({idx++, GaussianParams{spin, sigma, 0}});
    g.full_size_ = g.members_.size();
    return g;
}

ConditionGrid ConditionGrid::explicit_list(std::vector<Condition> conditions) {
    if (conditions.empty()) throw ConfigError("explicit condition list must not be empty");
    ConditionGrid g;
    g.kind_ = "explicit";
    g.members_ = std::move(conditions);
    g.full_size_ = g.members_.size();
    return g;
}

ConditionGrid ConditionGrid::subsample(std::size_t every_kth) const {
    if (every_kth == 0) throw ConfigError("subsample factor must be >= 1");
    if (every_kth == 1) return *this;
    ConditionGrid g;
    g.kind_ = kind_;
    g.full_size_ = full_size_;
    g.subsample_factor_ = subsample_factor_ * every_kth;
    for (std::size_t i = 0; i < members_.size(); i += every_kth) g.members_.push_back(members_[i]);
    if (g.members_.empty()) throw ConfigError("subsampling produced an empty grid");
    return g;
}

void EnsembleSpec::validate() const {
    if (grid.size() == 0) throw ConfigError("ensemble grid is empty");
    if (steps < 1) throw ConfigError("ensemble steps must be >= 1");
    if (realizations_per_condition < 1) throw ConfigError("realizations_per_condition must be >= 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    for (double th : thresholds)
        if (!(th > 0.0 && th < 1.0)) throw ConfigError("thresholds must lie in (0,1)");
    if (shared_sequence && std::holds_alternative<CrwEmulationPolicy>(policy))
        throw ConfigError("CRW emulation conditions its coins on the walker; "
                          "a shared sequence is not meaningful");
    validate_policy(policy, steps);
}

double EnsembleSummary::final_fraction_above(std::size_t threshold_idx) const {
    return fraction_above.at(threshold_idx).back();
}

namespace {

// Fixed member grouping: chunk boundaries (and therefore every floating-point
// merge order) do not depend on the worker count.
constexpr std::size_t kChunkMembers = 16;

struct ChunkAccum {
    std::vector<double> sum_se, min_se, max_se, sum_disp, sum_dist;
    std::vector<std::vector<double>> above;  // counts per threshold per step
    std::vector<double> dist_sum;
    std::size_t count = 0;

    void init(int steps, std::size_t nthr, bool moments, std::size_t dist_width) {
        const auto n = static_cast<std::size_t>(steps);
        sum_se.assign(n, 0.0);
        min_se.assign(n, std::numeric_limits<double>::infinity());
        max_se.assign(n, -std::numeric_limits<double>::infinity());
        if (moments) sum_disp.assign(n, 0.0);
        sum_dist.assign(n, 0.0);
        above.assign(nthr, std::vector<double>(n, 0.0));
        if (dist_width > 0) dist_sum.assign(dist_width, 0.0);
    }

    void merge_into(ChunkAccum& total) const {
        const std::size_t n = sum_se.size();
        for (std::size_t k = 0; k < n; ++k) {
            total.sum_se[k] += sum_se[k];
            total.min_se[k] = std::min(total.min_se[k], min_se[k]);
            total.max_se[k] = std::max(total.max_se[k], max_se[k]);
            total.sum_dist[k] += sum_dist[k];
        }
        for (std::size_t k = 0; k < sum_disp.size(); ++k) total.sum_disp[k] += sum_disp[k];
        for (std::size_t i = 0; i < above.size(); ++i)
            for (std::size_t k = 0; k < n; ++k) total.above[i][k] += above[i][k];
        for (std::size_t k = 0; k < dist_sum.size(); ++k) total.dist_sum[k] += dist_sum[k];
        total.count += count;
    }
};

struct MemberError {
    std::size_t member = std::numeric_limits<std::size_t>::max();
    std::string message;
};

}  // namespace

EnsembleSummary run_ensemble(const EnsembleSpec& spec) {
    spec.validate();

    CoinPolicy policy = spec.policy;
    if (spec.shared_sequence) {
        // One drawn sequence, reused by every member.
        RngStream rng = derive_stream({spec.master_seed, 0});
        ExplicitSequencePolicy seq;
        seq.coins.reserve(static_cast<std::size_t>(spec.steps));
        for (int t = 1; t <= spec.steps; ++t)
            seq.coins.push_back(coin_at(spec.policy, t, rng));
        policy = std::move(seq);
    }

    const std::size_t reals = static_cast<std::size_t>(spec.realizations_per_condition);
    const std::size_t members = spec.grid.size() * reals;
    const std::size_t nthr = spec.thresholds.size();
    const auto nsteps = static_cast<std::size_t>(spec.steps);

    // Global window for the final mean distribution.
    std::int64_t dist_jmin = 0;
    std::size_t dist_width = 0;
    if (spec.record_distribution) {
        std::int64_t lo = std::numeric_limits<std::int64_t>::max();
        std::int64_t hi = std::numeric_limits<std::int64_t>::min();
        for (std::size_t i = 0; i < spec.grid.size(); ++i) {
            const auto [a, b] = spec.grid.at(i).window_bounds();
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
        dist_jmin = lo - spec.steps;
        dist_width = static_cast<std::size_t>(hi - lo) + 1 + 2 * nsteps;
    }

    const std::size_t nchunks = (members + kChunkMembers - 1) / kChunkMembers;
    std::vector<ChunkAccum> chunks(nchunks);

    std::atomic<std::size_t> next_chunk{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    MemberError first_error;

    auto worker = [&]() {
        for (;;) {
            const std::size_t ci = next_chunk.fetch_add(1);
            if (ci >= nchunks || failed.load()) return;
            ChunkAccum& acc = chunks[ci];
            acc.init(spec.steps, nthr, spec.record_moments, dist_width);
            const std::size_t m_lo = ci * kChunkMembers;
            const std::size_t m_hi = std::min(m_lo + kChunkMembers, members);
            for (std::size_t m = m_lo; m < m_hi; ++m) {
                const std::size_t cond_slot = m / reals;
                const std::size_t r = m % reals;
                const Condition& cond = spec.grid.at(cond_slot);
                try {
                    WalkConfig cfg;
                    cfg.initial = cond.make_state();
                    cfg.policy = policy;
                    cfg.steps = spec.steps;
                    cfg.seed = {spec.master_seed, cond.index * reals + r};
                    if (!spec.record_moments) cfg.record = {"entropy", "trace_distance"};
                    const Trajectory traj = run(cfg);
                    for (std::size_t k = 0; k < nsteps; ++k) {
                        const auto& rec = traj.records[k];
                        acc.sum_se[k] += rec.s_e;
                        acc.min_se[k] = std::min(acc.min_se[k], rec.s_e);
                        acc.max_se[k] = std::max(acc.max_se[k], rec.s_e);
                        if (spec.record_moments) acc.sum_disp[k] += std::sqrt(*rec.variance);
                        acc.sum_dist[k] += *rec.trace_distance;
                        for (std::size_t i = 0; i < nthr; ++i)
                            if (rec.s_e > spec.thresholds[i]) acc.above[i][k] += 1.0;
                    }
                    if (dist_width > 0) {
                        const auto dist = position_distribution(traj.final_state);
                        const std::size_t off =
                            static_cast<std::size_t>(dist.j_min - dist_jmin);
                        for (std::size_t k = 0; k < dist.p.size(); ++k)
                            acc.dist_sum[off + k] += dist.p[k];
                    }
                    ++acc.count;
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (m < first_error.member) {
                        first_error.member = m;
                        first_error.message = "ensemble member failed (condition " +
                                              std::to_string(cond.index) + ", realization " +
                                              std::to_string(r) + "): " + e.what();
                    }
                    failed.store(true);
                    return;
                }
            }
        }
    };

    const std::size_t nworkers =
        std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), std::max<std::size_t>(nchunks, 1));
    if (nworkers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw ContractError(first_error.message);

    // Deterministic reduction: chunk order, not completion order.
    ChunkAccum total;
    total.init(spec.steps, nthr, spec.record_moments, dist_width);
    for (const auto& acc : chunks) acc.merge_into(total);

    EnsembleSummary out;
    out.steps = spec.steps;
    out.members = total.count;
    out.thresholds = spec.thresholds;
    out.mean_s_e.resize(nsteps);
    out.min_s_e = total.min_se;
    out.max_s_e = total.max_se;
    out.mean_trace_distance.resize(nsteps);
    if (spec.record_moments) out.mean_dispersion.resize(nsteps);
    out.fraction_above.assign(nthr, std::vector<double>(nsteps, 0.0));
    const double inv = 1.0 / static_cast<double>(members);
    for (std::size_t k = 0; k < nsteps; ++k) {
        out.mean_s_e[k] = total.sum_se[k] * inv;
        out.mean_trace_distance[k] = total.sum_dist[k] * inv;
        if (spec.record_moments) out.mean_dispersion[k] = total.sum_disp[k] * inv;
        for (std::size_t i = 0; i < nthr; ++i)
            out.fraction_above[i][k] = total.above[i][k] * inv;
    }
    if (dist_width > 0) {
        out.mean_final_distribution.j_min = dist_jmin;
        out.mean_final_distribution.p.resize(dist_width);
        for (std::size_t k = 0; k < dist_width; ++k)
            out.mean_final_distribution.p[k] = total.dist_sum[k] * inv;
    }
    return out;
}

AsymptoticRange asymptotic_range(const CoinPolicy& policy, const ConditionGrid& grid, int steps,
                                 int jobs) {
    if (!is_deterministic(policy))
        throw ContractError("asymptotic_range requires a deterministic coin policy");
    EnsembleSpec spec;
    spec.grid = grid;
    spec.policy = policy;
    spec.steps = steps;
    spec.jobs = jobs;
    spec.record_moments = false;
    spec.record_distribution = false;
    const EnsembleSummary s = run_ensemble(spec);
    return {s.min_s_e.back(), s.max_s_e.back()};
}

}  // namespace qwalk
