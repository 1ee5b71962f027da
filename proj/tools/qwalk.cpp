#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/execute.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> steps;
    std::optional<int> jobs;
    std::optional<std::string> out_dir;
    std::optional<std::size_t> subsample;
    bool dry_run = false;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON run configuration");
    cmd->add_option("--seed", flags.seed, "master seed (overrides the config file)");
    cmd->add_option("--steps", flags.steps, "step count (overrides the config file)");
    cmd->add_option("--jobs", flags.jobs, "worker threads (overrides the config file)");
    cmd->add_option("--out", flags.out_dir, "output directory (overrides the config file)");
    cmd->add_option("--subsample", flags.subsample, "run every k-th grid condition");
    cmd->add_flag("--dry-run", flags.dry_run, "validate and print the plan without computing");
}

int dispatch(const std::string& command, const Flags& flags) {
    qwalk::CliOverrides overrides;
    overrides.command = command;
    overrides.seed = flags.seed;
    overrides.steps = flags.steps;
    overrides.jobs = flags.jobs;
    overrides.out_dir = flags.out_dir;
    overrides.subsample = flags.subsample;
    overrides.dry_run = flags.dry_run;

    qwalk::RunConfig cfg;
    if (!flags.config_path.empty()) {
        cfg = qwalk::parse_config_file(flags.config_path, overrides);
    } else {
        cfg = qwalk::parse_config(nlohmann::json::object(), overrides);
    }
    qwalk::execute(cfg, std::cout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time quantum walk engine with time-dependent coins"};
    app.require_subcommand(1);

    Flags flags;
    std::string picked;
    const std::pair<const char*, const char*> commands[] = {
        {"walk", "single trajectory with per-step observables"},
        {"ensemble", "initial-condition sweep with aggregated statistics"},
        {"fit", "power-law fit of a stored series"},
        {"experiment", "28-step Hadamard vs published H/F sequence comparison"},
        {"crw-check", "classical-walk embedding against the binomial law"},
    };
    for (const auto& [name, desc] : commands) {
        auto* cmd = app.add_subcommand(name, desc);
        add_common_flags(cmd, flags);
        cmd->callback([&picked, name = name]() { picked = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return dispatch(picked, flags);
    } catch (const qwalk::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qwalk::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
