#pragma once

#include <string>

#include <json.hpp>

#include "qwalk/analysis.hpp"
#include "qwalk/config.hpp"
#include "qwalk/evolution.hpp"

namespace qwalk {

/// Stamped into the first line of every CSV so any artifact can be traced
/// back to the exact configuration and seed that produced it.
struct ArtifactStamp {
    std::string config_hash;
    std::uint64_t master_seed = 0;
};

std::string format_g17(double v);

/// Compact threshold label for column names: 0.95 -> "0.95".
std::string threshold_label(double v);

void ensure_directory(const std::string& dir);

/// One row per step: t, mean_SE, min_SE, max_SE, mean_disp, mean_D and one
/// frac_<threshold> column per threshold.
void write_summary_csv(const std::string& path, const EnsembleSummary& summary,
                       const ArtifactStamp& stamp);

/// Rows j, mean_P.
void write_distribution_csv(const std::string& path, const PositionDistribution& dist,
                            const ArtifactStamp& stamp);

/// Rows t, S_E, alpha, re_gamma, im_gamma, r1, r2, r3, mean_j, variance, D;
/// unrecorded observables stay empty.
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const ArtifactStamp& stamp);

void write_json_file(const std::string& path, const nlohmann::json& doc);

/// Reads a CSV written by this tool (comment lines ignored) and pairs the
/// `t` column with the named column.
Series read_series_csv(const std::string& path, const std::string& column);

/// Run metadata sidecar: canonical config, hash, seed, generator name and a
/// timestamp (the timestamp lives only here, keeping CSVs byte-stable).
nlohmann::json meta_sidecar(const RunConfig& cfg);

}  // namespace qwalk
