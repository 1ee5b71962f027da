#include "qwalk/execute.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

#include "qwalk/errors.hpp"
#include "qwalk/protocols.hpp"
#include "qwalk/report.hpp"

namespace qwalk {

namespace {

ArtifactStamp stamp_for(const RunConfig& cfg) {
    return {config_hash(cfg.canonical), cfg.master_seed};
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return cfg.out_dir + "/" + name;
}

double estimated_site_updates(std::size_t members, int steps, std::size_t width0) {
    // every step touches the active window, which grows by 2 per step
    const double n = static_cast<double>(steps);
    return static_cast<double>(members) * n * (static_cast<double>(width0) + n);
}

void run_walk(const RunConfig& cfg, std::ostream& out) {
    WalkConfig wc;
    wc.initial = *cfg.initial;
    wc.policy = *cfg.policy;
    wc.steps = cfg.steps;
    wc.seed = {cfg.master_seed, 0};
    wc.record = cfg.record;

    if (cfg.dry_run) {
        out << "plan: walk, " << cfg.steps << " steps, policy " << policy_kind_name(wc.policy)
            << ", ~" << estimated_site_updates(1, cfg.steps, wc.initial.width())
            << " site updates\n";
        return;
    }
    const Trajectory traj = run(wc);

    ensure_directory(cfg.out_dir);
    write_trajectory_csv(out_path(cfg, "trajectory.csv"), traj, stamp_for(cfg));
    write_json_file(out_path(cfg, "meta.json"), meta_sidecar(cfg));

    const auto& last = traj.records.back();
    out << "walk: " << cfg.steps << " steps, policy " << policy_kind_name(wc.policy) << "\n";
    out << "  S_E(" << cfg.steps << ") = " << format_g17(last.s_e) << "\n";
    out << "  alpha = " << format_g17(last.alpha) << ", |gamma| = " << format_g17(std::abs(last.gamma))
        << "\n";
    if (last.mean_j)
        out << "  <j> = " << format_g17(*last.mean_j) << ", sigma^2 = " << format_g17(*last.variance)
            << "\n";
    out << "  artifacts: trajectory.csv, meta.json in " << cfg.out_dir << "\n";
}

void run_ensemble_cmd(const RunConfig& cfg, std::ostream& out) {
    EnsembleSpec spec;
    spec.grid = cfg.grid->subsample(cfg.subsample);
    spec.policy = *cfg.policy;
    spec.steps = cfg.steps;
    spec.master_seed = cfg.master_seed;
    spec.realizations_per_condition = cfg.realizations;
    spec.thresholds = cfg.thresholds;
    spec.shared_sequence = cfg.shared_sequence;
    spec.jobs = cfg.jobs;
    spec.validate();

    const std::size_t members = spec.grid.size() * static_cast<std::size_t>(cfg.realizations);
    if (cfg.dry_run) {
        const auto [lo, hi] = spec.grid.at(0).window_bounds();
        out << "plan: ensemble over " << spec.grid.size() << " conditions ("
            << cfg.grid->full_size() << " in the full " << cfg.grid->kind() << " grid, 1 in "
            << cfg.subsample << "), " << cfg.realizations << " realization(s) each, " << cfg.steps
            << " steps, policy " << policy_kind_name(spec.policy) << "\n";
        out << "  ~" << estimated_site_updates(members, cfg.steps,
                                               static_cast<std::size_t>(hi - lo + 1))
            << " site updates across " << cfg.jobs << " worker(s)\n";
        return;
    }

    const EnsembleSummary summary = run_ensemble(spec);

    ensure_directory(cfg.out_dir);
    const auto stamp = stamp_for(cfg);
    write_summary_csv(out_path(cfg, "summary.csv"), summary, stamp);
    write_distribution_csv(out_path(cfg, "distribution.csv"), summary.mean_final_distribution,
                           stamp);
    auto meta = meta_sidecar(cfg);
    meta["members"] = summary.members;
    write_json_file(out_path(cfg, "meta.json"), meta);

    out << "ensemble: " << summary.members << " members, " << cfg.steps << " steps, policy "
        << policy_kind_name(spec.policy) << "\n";
    out << "  final <S_E> = " << format_g17(summary.mean_s_e.back()) << " (min "
        << format_g17(summary.min_s_e.back()) << ", max " << format_g17(summary.max_s_e.back())
        << ")\n";
    for (std::size_t i = 0; i < summary.thresholds.size(); ++i)
        out << "  fraction S_E > " << threshold_label(summary.thresholds[i]) << " at step "
            << cfg.steps << ": " << format_g17(summary.final_fraction_above(i)) << "\n";
    if (!summary.mean_dispersion.empty())
        out << "  final <sqrt(sigma^2)> = " << format_g17(summary.mean_dispersion.back()) << "\n";
    out << "  artifacts: summary.csv, distribution.csv, meta.json in " << cfg.out_dir << "\n";
}

void run_fit(const RunConfig& cfg, std::ostream& out) {
    if (cfg.dry_run) {
        out << "plan: fit column `" << cfg.fit.column << "` of " << cfg.fit.input
            << " for t >= " << cfg.fit.t_min << "\n";
        return;
    }
    const Series series = read_series_csv(cfg.fit.input, cfg.fit.column);
    const FitResult fit = loglog_fit(series, cfg.fit.t_min);

    nlohmann::json doc;
    doc["input"] = cfg.fit.input;
    doc["column"] = cfg.fit.column;
    doc["t_min"] = fit.t_min_used;
    doc["points_used"] = fit.points_used;
    doc["slope"] = fit.slope;
    doc["slope_ci_95"] = {fit.slope_ci_95.first, fit.slope_ci_95.second};
    doc["intercept"] = fit.intercept;
    doc["amplitude"] = std::exp(fit.intercept);
    doc["r_squared"] = fit.r_squared;

    out << "fit " << cfg.fit.column << " ~ t^s (t >= " << cfg.fit.t_min << ", "
        << fit.points_used << " points): s = " << format_g17(fit.slope) << " (95% CI ["
        << format_g17(fit.slope_ci_95.first) << ", " << format_g17(fit.slope_ci_95.second)
        << "]), R^2 = " << format_g17(fit.r_squared) << "\n";

    if (cfg.fit.exponent) {
        const PrefactorResult pre =
            fixed_exponent_prefactor(series, *cfg.fit.exponent, cfg.fit.t_min);
        doc["fixed_exponent"] = *cfg.fit.exponent;
        doc["prefactor"] = pre.prefactor;
        doc["prefactor_ci_95"] = {pre.ci_95.first, pre.ci_95.second};
        out << "  prefactor for t^" << format_g17(*cfg.fit.exponent) << ": "
            << format_g17(pre.prefactor) << " (95% CI [" << format_g17(pre.ci_95.first) << ", "
            << format_g17(pre.ci_95.second) << "])\n";
    }

    ensure_directory(cfg.out_dir);
    doc["config_hash"] = config_hash(cfg.canonical);
    doc["master_seed"] = cfg.master_seed;
    write_json_file(out_path(cfg, "fit.json"), doc);
    out << "  artifacts: fit.json in " << cfg.out_dir << "\n";
}

void run_experiment(const RunConfig& cfg, std::ostream& out) {
    const auto seq = CoinLabelSequence::parse(kPublishedSequence);
    const int steps = static_cast<int>(seq.size());
    const double pi = std::numbers::pi;
    const std::vector<std::pair<double, double>> conditions = {
        {2.7, pi}, {2.7, -pi}, {2.7, 0.0}, {2.7, pi / 2.0}, {2.7, -pi / 2.0}};

    if (cfg.dry_run) {
        out << "plan: experiment, " << conditions.size() << " conditions, " << steps
            << "-step Hadamard walk vs published H/F sequence\n";
        return;
    }

    // Per-step S_E trajectories for both panels.
    auto trajectories = [&](const CoinPolicy& policy) {
        std::vector<std::vector<double>> per_cond;
        for (const auto& [as, bs] : conditions) {
            WalkConfig wc;
            wc.initial = localized(spin_from_angles(as, bs), 0);
            wc.policy = policy;
            wc.steps = steps;
            wc.record = {"entropy"};
            const auto traj = run(wc);
            std::vector<double> se;
            se.reserve(traj.records.size());
            for (const auto& r : traj.records) se.push_back(r.s_e);
            per_cond.push_back(std::move(se));
        }
        return per_cond;
    };
    const auto se_hadamard = trajectories(FixedPolicy{hadamard_coin()});
    const auto se_sequence = trajectories(ExplicitSequencePolicy{seq.coins()});

    ensure_directory(cfg.out_dir);
    const auto stamp = stamp_for(cfg);
    auto write_panel = [&](const std::string& name, const std::vector<std::vector<double>>& se) {
        std::ofstream panel(out_path(cfg, name));
        if (!panel) throw IoError("cannot open output file: " + out_path(cfg, name));
        panel << "# config_hash=" << stamp.config_hash << " master_seed=" << stamp.master_seed
              << " generator=" << RngStream::kGeneratorName << "\n";
        panel << "t";
        for (const auto& [as, bs] : conditions)
            panel << ",SE_" << threshold_label(as) << "_" << threshold_label(bs);
        panel << "\n";
        for (int t = 1; t <= steps; ++t) {
            panel << t;
            for (const auto& se_c : se)
                panel << ',' << format_g17(se_c[static_cast<std::size_t>(t - 1)]);
            panel << "\n";
        }
        if (!panel) throw IoError("failed writing " + out_path(cfg, name));
    };
    write_panel("hadamard_trajectories.csv", se_hadamard);
    write_panel("sequence_trajectories.csv", se_sequence);

    std::ofstream table(out_path(cfg, "experiment.csv"));
    if (!table) throw IoError("cannot open output file: " + out_path(cfg, "experiment.csv"));
    table << "# config_hash=" << stamp.config_hash << " master_seed=" << stamp.master_seed
          << " generator=" << RngStream::kGeneratorName << "\n";
    table << "alpha_s,beta_s,SE_hadamard,SE_sequence\n";

    out << "experiment: sequence " << seq.text() << " (" << steps << " steps)\n";
    out << "  (alpha_s, beta_s)    S_E Hadamard    S_E sequence\n";
    char line[128];
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        const auto [as, bs] = conditions[i];
        const double h = se_hadamard[i].back();
        const double s = se_sequence[i].back();
        std::snprintf(line, sizeof line, "  (%.2f, %+.5f)    %.3f           %.3f\n", as, bs, h, s);
        out << line;
        table << format_g17(as) << ',' << format_g17(bs) << ',' << format_g17(h) << ','
              << format_g17(s) << "\n";
    }
    if (!table) throw IoError("failed writing " + out_path(cfg, "experiment.csv"));
    write_json_file(out_path(cfg, "meta.json"), meta_sidecar(cfg));
    out << "  artifacts: experiment.csv, hadamard_trajectories.csv, sequence_trajectories.csv, "
           "meta.json in "
        << cfg.out_dir << "\n";
}

void run_crw_check(const RunConfig& cfg, std::ostream& out) {
    const int n = cfg.steps;
    const int reals = cfg.crw.realizations;
    if (cfg.dry_run) {
        out << "plan: crw-check, p = " << cfg.crw.p << ", " << n << " steps, " << reals
            << " realizations\n";
        return;
    }

    EnsembleSpec spec;
    spec.grid = ConditionGrid::explicit_list(
        {Condition{0, WalkerState{localized(SpinVector{Complex(1, 0), Complex(0, 0)}, 0)}}});
    spec.policy = CrwEmulationPolicy{cfg.crw.p};
    spec.steps = n;
    spec.master_seed = cfg.master_seed;
    spec.realizations_per_condition = reals;
    spec.jobs = cfg.jobs;
    spec.record_moments = false;
    const EnsembleSummary summary = run_ensemble(spec);

    double max_se = 0.0;
    for (double se : summary.max_s_e) max_se = std::max(max_se, se);

    // total variation against the binomial of k right-moves out of n:
    // P(k) = C(n,k) p^k (1-p)^(n-k) at site j = 2k - n
    double tv = 0.0;
    double checked_mass = 0.0;
    const auto& dist = summary.mean_final_distribution;
    for (int k = 0; k <= n; ++k) {
        const std::int64_t j = 2 * static_cast<std::int64_t>(k) - n;
        double logp = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        if (cfg.crw.p > 0.0) logp += k * std::log(cfg.crw.p);
        else if (k > 0) logp = -std::numeric_limits<double>::infinity();
        if (cfg.crw.p < 1.0) logp += (n - k) * std::log(1.0 - cfg.crw.p);
        else if (n - k > 0) logp = -std::numeric_limits<double>::infinity();
        const double pb = std::exp(logp);
        tv += std::abs(dist.at(j) - pb);
        checked_mass += dist.at(j);
    }
    tv += 1.0 - checked_mass;  // any empirical mass off the binomial support
    tv *= 0.5;

    ensure_directory(cfg.out_dir);
    const auto stamp = stamp_for(cfg);
    write_distribution_csv(out_path(cfg, "distribution.csv"), dist, stamp);
    nlohmann::json doc;
    doc["p"] = cfg.crw.p;
    doc["steps"] = n;
    doc["realizations"] = reals;
    doc["tv_distance_to_binomial"] = tv;
    doc["max_S_E"] = max_se;
    doc["config_hash"] = stamp.config_hash;
    doc["master_seed"] = cfg.master_seed;
    write_json_file(out_path(cfg, "crw_check.json"), doc);

    out << "crw-check: p = " << cfg.crw.p << ", " << n << " steps, " << reals << " realizations\n";
    out << "  max S_E over all steps = " << format_g17(max_se) << " (classical embedding keeps it at 0)\n";
    out << "  TV distance of final <P(j)> to the binomial = " << format_g17(tv) << "\n";
    out << "  artifacts: distribution.csv, crw_check.json in " << cfg.out_dir << "\n";
}

}  // namespace

void execute(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
        case Command::walk: run_walk(cfg, out); return;
        case Command::ensemble: run_ensemble_cmd(cfg, out); return;
        case Command::fit: run_fit(cfg, out); return;
        case Command::experiment: run_experiment(cfg, out); return;
        case Command::crw_check: run_crw_check(cfg, out); return;
    }
    throw ConfigError("unhandled command");
}

}  // namespace qwalk
