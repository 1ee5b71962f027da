#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/ensemble.hpp"

namespace qwalk {

enum class Command { walk, ensemble, fit, experiment, crw_check };

Command command_from_name(const std::string& name);
const char* command_name(Command c);

struct FitSpec {
    std::string input;          // CSV holding a t column and the series column
    std::string column = "mean_D";
    int t_min = 10;
    std::optional<double> exponent;  // when set, also fit the fixed-exponent prefactor
};

struct CrwCheckSpec {
    double p = 0.5;
    int realizations = 10000;
};

/// Fully validated run description: every block has been range-checked and
/// resolved against the module invariants before any computation starts.
struct RunConfig {
    Command command = Command::walk;
    int steps = 100;
    std::uint64_t master_seed = 1;
    int jobs = 1;
    std::size_t subsample = 1;
    std::string out_dir = "qwalk-out";
    bool dry_run = false;
    std::vector<std::string> record;
    std::vector<double> thresholds = {0.95, 0.97, 0.99};
    int realizations = 1;
    bool shared_sequence = false;

    std::optional<WalkerState> initial;  // walk
    std::optional<CoinPolicy> policy;    // walk, ensemble
    std::optional<ConditionGrid> grid;   // ensemble (pre-subsample)
    FitSpec fit;                         // fit
    CrwCheckSpec crw;                    // crw-check

    /// Resolved config as canonical JSON; hashed into every artifact.
    nlohmann::json canonical;
};

/// Command-line overrides applied on top of the config file.
struct CliOverrides {
    std::optional<std::string> command;
    std::optional<std::uint64_t> seed;
    std::optional<int> steps;
    std::optional<int> jobs;
    std::optional<std::string> out_dir;
    std::optional<std::size_t> subsample;
    bool dry_run = false;
};

/// Parses and validates a config document. Unknown keys fail closed with the
/// offending key path; all range checks happen here. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& doc, const CliOverrides& overrides = {});

/// Loads the JSON file (IoError if unreadable, ConfigError if invalid).
RunConfig parse_config_file(const std::string& path, const CliOverrides& overrides = {});

/// FNV-1a over the canonical config dump, printed as 16 hex digits.
std::string config_hash(const nlohmann::json& canonical);

CoinPolicy parse_policy_block(const nlohmann::json& block, const std::string& path);
WalkerState parse_initial_block(const nlohmann::json& block, const std::string& path);
/// `default_seed` feeds the "two-site-random" grid kind when the block
/// carries no seed of its own.
ConditionGrid parse_grid_block(const nlohmann::json& block, const std::string& path,
                               std::uint64_t default_seed = 1);

}  // namespace qwalk
