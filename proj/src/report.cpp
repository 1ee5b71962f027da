#include "qwalk/report.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

void write_stamp(std::ofstream& out, const ArtifactStamp& stamp) {
    out << "# config_hash=" << stamp.config_hash << " master_seed=" << stamp.master_seed
        << " generator=" << RngStream::kGeneratorName << "\n";
}

void append_optional(std::string& row, const std::optional<double>& v) {
    row += ',';
    if (v) row += format_g17(*v);
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string threshold_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

void write_summary_csv(const std::string& path, const EnsembleSummary& summary,
                       const ArtifactStamp& stamp) {
    auto out = open_output(path);
    write_stamp(out, stamp);
    out << "t,mean_SE,min_SE,max_SE,mean_disp,mean_D";
    for (double th : summary.thresholds) out << ",frac_" << threshold_label(th);
    out << "\n";
    const auto n = static_cast<std::size_t>(summary.steps);
    for (std::size_t k = 0; k < n; ++k) {
        std::string row = std::to_string(k + 1);
        row += ',' + format_g17(summary.mean_s_e[k]);
        row += ',' + format_g17(summary.min_s_e[k]);
        row += ',' + format_g17(summary.max_s_e[k]);
        row += ',';
        if (!summary.mean_dispersion.empty()) row += format_g17(summary.mean_dispersion[k]);
        row += ',' + format_g17(summary.mean_trace_distance[k]);
        for (std::size_t i = 0; i < summary.thresholds.size(); ++i)
            row += ',' + format_g17(summary.fraction_above[i][k]);
        out << row << "\n";
    }
    if (!out) throw IoError("failed writing " + path);
}

void write_distribution_csv(const std::string& path, const PositionDistribution& dist,
                            const ArtifactStamp& stamp) {
    auto out = open_output(path);
    write_stamp(out, stamp);
    out << "j,mean_P\n";
    for (std::size_t k = 0; k < dist.p.size(); ++k)
        out << (dist.j_min + static_cast<std::int64_t>(k)) << ',' << format_g17(dist.p[k]) << "\n";
    if (!out) throw IoError("failed writing " + path);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const ArtifactStamp& stamp) {
    auto out = open_output(path);
    write_stamp(out, stamp);
    out << "t,S_E,alpha,re_gamma,im_gamma,r1,r2,r3,mean_j,variance,D\n";
    for (const auto& r : traj.records) {
        std::string row = std::to_string(r.t);
        row += ',' + format_g17(r.s_e);
        row += ',' + format_g17(r.alpha);
        row += ',' + format_g17(r.gamma.real());
        row += ',' + format_g17(r.gamma.imag());
        for (double b : r.bloch) row += ',' + format_g17(b);
        append_optional(row, r.mean_j);
        append_optional(row, r.variance);
        append_optional(row, r.trace_distance);
        out << row << "\n";
    }
    if (!out) throw IoError("failed writing " + path);
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
    auto out = open_output(path);
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + path);
}

Series read_series_csv(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open series CSV: " + path);

    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
        break;
    }
    std::size_t t_col = header.size(), y_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "t") t_col = i;
        if (header[i] == column) y_col = i;
    }
    if (t_col == header.size()) throw ConfigError(path + " has no `t` column");
    if (y_col == header.size()) throw ConfigError(path + " has no `" + column + "` column");

    Series series;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t i = 0;
        double t = 0.0, y = 0.0;
        bool have_t = false, have_y = false;
        while (std::getline(ss, cell, ',')) {
            if (i == t_col && !cell.empty()) {
                t = std::stod(cell);
                have_t = true;
            }
            if (i == y_col && !cell.empty()) {
                y = std::stod(cell);
                have_y = true;
            }
            ++i;
        }
        if (have_t && have_y) series.push_back({t, y});
    }
    if (series.empty()) throw ConfigError(path + " holds no usable (t, " + column + ") rows");
    return series;
}

nlohmann::json meta_sidecar(const RunConfig& cfg) {
    nlohmann::json meta;
    meta["config"] = cfg.canonical;
    meta["config_hash"] = config_hash(cfg.canonical);
    meta["master_seed"] = cfg.master_seed;
    meta["generator"] = RngStream::kGeneratorName;
    meta["command"] = command_name(cfg.command);
    meta["subsample"] = cfg.subsample;
    const auto now = std::chrono::system_clock::now();
    meta["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    if (cfg.grid) {
        meta["grid"] = {{"kind", cfg.grid->kind()},
                        {"full_size", cfg.grid->full_size()},
                        {"run_size", cfg.grid->subsample(cfg.subsample).size()}};
    }
    return meta;
}

}  // namespace qwalk
