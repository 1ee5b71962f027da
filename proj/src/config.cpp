#include "qwalk/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "qwalk/errors.hpp"
#include "qwalk/protocols.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at `" + path + "`: " + what);
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) fail(path + "." + key, "unknown key");
}

double get_number(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) fail(path + "." + key, "missing required number");
    if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

double get_number_or(const json& j, const char* key, const std::string& path, double def) {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) fail(path + "." + key, "missing required integer");
    if (!j.at(key).is_number_integer()) fail(path + "." + key, "expected an integer");
    return j.at(key).get<int>();
}

std::string get_string(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) fail(path + "." + key, "missing required string");
    if (!j.at(key).is_string()) fail(path + "." + key, "expected a string");
    return j.at(key).get<std::string>();
}

double check_prob(double p, const std::string& path) {
    if (!(p >= 0.0 && p <= 1.0)) fail(path, "probability must lie in [0,1]");
    return p;
}

/// A coin is either a name ("hadamard") or a {q, theta, phi} object.
CoinMatrix parse_coin(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return named_coin(j.get<std::string>());
        } catch (const ConfigError& e) {
            fail(path, e.what());
        }
    }
    expect_object(j, path);
    reject_unknown_keys(j, {"q", "theta", "phi"}, path);
    CoinParams p{get_number(j, "q", path), get_number_or(j, "theta", path, 0.0),
                 get_number_or(j, "phi", path, 0.0)};
    try {
        return coin_from_params(p);
    } catch (const ContractError& e) {
        fail(path, e.what());
    }
}

/// Number -> fixed parameter; [lo, hi] -> uniform draw per step.
ParamSpec parse_param_spec(const json& j, const std::string& path, double lo_legal,
                           double hi_legal, double fallback) {
    ParamSpec s = ParamSpec::fixed(fallback);
    if (!j.is_null()) {
        if (j.is_number()) {
            s = ParamSpec::fixed(j.get<double>());
        } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
            s = ParamSpec::uniform(j[0].get<double>(), j[1].get<double>());
        } else {
            fail(path, "expected a number or [lo, hi]");
        }
    }
    if (!(s.lo <= s.hi)) fail(path, "range must satisfy lo <= hi");
    if (!(s.lo >= lo_legal && s.hi <= hi_legal)) fail(path, "range outside the legal interval");
    return s;
}

SpinVector parse_spin(const json& j, const std::string& path) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "xi1") return xi1_spin();
        if (name == "xi2") return xi2_spin();
        if (name == "up") return SpinVector{Complex(1, 0), Complex(0, 0)};
        if (name == "down") return SpinVector{Complex(0, 0), Complex(1, 0)};
        fail(path, "unknown spin name (expected xi1, xi2, up or down)");
    }
    expect_object(j, path);
    reject_unknown_keys(j, {"alpha_s", "beta_s"}, path);
    return spin_from_angles(get_number(j, "alpha_s", path), get_number_or(j, "beta_s", path, 0.0));
}

}  // namespace

CoinPolicy parse_policy_block(const json& block, const std::string& path) {
    expect_object(block, path);
    const std::string kind = get_string(block, "kind", path);
    if (kind == "fixed") {
        reject_unknown_keys(block, {"kind", "coin"}, path);
        if (!block.contains("coin")) fail(path + ".coin", "missing coin");
        return FixedPolicy{parse_coin(block.at("coin"), path + ".coin")};
    }
    if (kind == "binary") {
        reject_unknown_keys(block, {"kind", "p", "c1", "c2"}, path);
        BinaryRandomPolicy p;
        p.p = check_prob(get_number_or(block, "p", path, 0.5), path + ".p");
        p.c1 = block.contains("c1") ? parse_coin(block.at("c1"), path + ".c1") : hadamard_coin();
        p.c2 = block.contains("c2") ? parse_coin(block.at("c2"), path + ".c2") : fourier_coin();
        return p;
    }
    if (kind == "continuous") {
        reject_unknown_keys(block, {"kind", "q", "theta", "phi"}, path);
        const double two_pi = 2.0 * std::numbers::pi;
        ContinuousRandomPolicy p;
        p.q = parse_param_spec(block.value("q", json()), path + ".q", 0.0, 1.0, 0.5);
        p.theta = parse_param_spec(block.value("theta", json()), path + ".theta", 0.0, two_pi, 0.0);
        p.phi = parse_param_spec(block.value("phi", json()), path + ".phi", 0.0, two_pi, 0.0);
        return p;
    }
    if (kind == "periodic-smooth" || kind == "periodic-alternating") {
        reject_unknown_keys(block, {"kind", "T"}, path);
        const int T = get_int(block, "T", path);
        if (T < 1) fail(path + ".T", "period must be a positive integer");
        if (kind == "periodic-smooth") return PeriodicSmoothPolicy{T};
        return PeriodicAlternatingPolicy{T};
    }
    if (kind == "sequence") {
        reject_unknown_keys(block, {"kind", "labels"}, path);
        try {
            return ExplicitSequencePolicy{
                CoinLabelSequence::parse(get_string(block, "labels", path)).coins()};
        } catch (const ConfigError& e) {
            fail(path + ".labels", e.what());
        }
    }
    if (kind == "crw") {
        reject_unknown_keys(block, {"kind", "p"}, path);
        return CrwEmulationPolicy{check_prob(get_number_or(block, "p", path, 0.5), path + ".p")};
    }
    fail(path + ".kind", "unknown policy kind `" + kind + "`");
}

WalkerState parse_initial_block(const json& block, const std::string& path) {
    expect_object(block, path);
    const std::string kind = get_string(block, "kind", path);
    if (kind == "localized") {
        reject_unknown_keys(block, {"kind", "alpha_s", "beta_s", "spin", "j0"}, path);
        SpinVector spin;
        if (block.contains("spin")) {
            spin = parse_spin(block.at("spin"), path + ".spin");
        } else {
            spin = spin_from_angles(get_number(block, "alpha_s", path),
                                    get_number_or(block, "beta_s", path, 0.0));
        }
        const auto j0 = static_cast<std::int64_t>(
            block.contains("j0") ? get_int(block, "j0", path) : 0);
        return localized(spin, j0);
    }
    if (kind == "two-site") {
        reject_unknown_keys(block, {"kind", "alpha_s", "beta_s", "alpha_p", "beta_p"}, path);
        return two_site(get_number(block, "alpha_s", path), get_number(block, "beta_s", path),
                        get_number(block, "alpha_p", path), get_number(block, "beta_p", path));
    }
    if (kind == "gaussian") {
        reject_unknown_keys(block, {"kind", "sigma", "cutoff", "spin"}, path);
        const double sigma = get_number(block, "sigma", path);
        if (!(sigma > 0.0)) fail(path + ".sigma", "sigma must be positive");
        const auto cutoff = static_cast<std::int64_t>(
            block.contains("cutoff") ? get_int(block, "cutoff", path) : 0);
        if (cutoff != 0 && cutoff < static_cast<std::int64_t>(std::ceil(6.0 * sigma)))
            fail(path + ".cutoff", "cutoff must be at least ceil(6 sigma)");
        SpinVector spin = block.contains("spin") ? parse_spin(block.at("spin"), path + ".spin")
                                                 : xi1_spin();
        return gaussian(spin, sigma, cutoff);
    }
    fail(path + ".kind", "unknown initial-state kind `" + kind + "`");
}

ConditionGrid parse_grid_block(const json& block, const std::string& path,
                               std::uint64_t default_seed) {
    expect_object(block, path);
    const std::string kind = get_string(block, "kind", path);
    if (kind == "two-site-random") {
        // the random-condition families of the appendix figures
        reject_unknown_keys(block, {"kind", "count", "seed"}, path);
        const int count = get_int(block, "count", path);
        if (count < 1) fail(path + ".count", "count must be >= 1");
        std::uint64_t seed = default_seed;
        if (block.contains("seed")) {
            if (!block.at("seed").is_number_integer() && !block.at("seed").is_number_unsigned())
                fail(path + ".seed", "expected an unsigned integer");
            seed = block.at("seed").get<std::uint64_t>();
        }
        RngStream rng = derive_stream({seed, 0});
        const double pi = std::numbers::pi;
        std::vector<Condition> members;
        members.reserve(static_cast<std::size_t>(count));
        for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i)
            members.push_back({i, TwoSiteParams{rng.uniform(0, pi), rng.uniform(0, 2 * pi),
                                                rng.uniform(0, pi), rng.uniform(0, 2 * pi)}});
        return ConditionGrid::explicit_list(std::move(members));
    }
    if (kind == "two-site") {
        reject_unknown_keys(block, {"kind", "increment"}, path);
        const double inc = get_number(block, "increment", path);
        if (!(inc > 0.0)) fail(path + ".increment", "increment must be positive");
        return ConditionGrid::two_site_grid(inc);
    }
    if (kind == "localized-spin") {
        reject_unknown_keys(block, {"kind", "increment"}, path);
        const double inc = get_number(block, "increment", path);
        if (!(inc > 0.0)) fail(path + ".increment", "increment must be positive");
        return ConditionGrid::localized_spin_grid(inc);
    }
    if (kind == "gaussian") {
        reject_unknown_keys(block, {"kind", "sigmas", "spins"}, path);
        if (!block.contains("sigmas") || !block.at("sigmas").is_array())
            fail(path + ".sigmas", "expected an array of positive sigmas");
        std::vector<double> sigmas;
        for (const auto& v : block.at("sigmas")) {
            if (!v.is_number() || !(v.get<double>() > 0.0))
                fail(path + ".sigmas", "expected an array of positive sigmas");
            sigmas.push_back(v.get<double>());
        }
        std::vector<SpinVector> spins;
        if (block.contains("spins")) {
            if (!block.at("spins").is_array()) fail(path + ".spins", "expected an array");
            for (const auto& v : block.at("spins")) spins.push_back(parse_spin(v, path + ".spins"));
        } else {
            spins = {xi1_spin(), xi2_spin()};
        }
        return ConditionGrid::gaussian_set(sigmas, spins);
    }
    if (kind == "explicit") {
        reject_unknown_keys(block, {"kind", "conditions"}, path);
        if (!block.contains("conditions") || !block.at("conditions").is_array())
            fail(path + ".conditions", "expected an array of [alpha_s, beta_s] pairs");
        std::vector<Condition> members;
        std::size_t idx = 0;
        for (const auto& c : block.at("conditions")) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                fail(path + ".conditions", "expected [alpha_s, beta_s] pairs");
            members.push_back(
                {idx++, LocalizedSpinParams{c[0].get<double>(), c[1].get<double>(), 0}});
        }
        if (members.empty()) fail(path + ".conditions", "condition list is empty");
        return ConditionGrid::explicit_list(std::move(members));
    }
    fail(path + ".kind", "unknown grid kind `" + kind + "`");
}

Command command_from_name(const std::string& name) {
    if (name == "walk") return Command::walk;
    if (name == "ensemble") return Command::ensemble;
    if (name == "fit") return Command::fit;
    if (name == "experiment") return Command::experiment;
    if (name == "crw-check") return Command::crw_check;
    throw ConfigError("unknown command `" + name + "`");
}

const char* command_name(Command c) {
    switch (c) {
        case Command::walk: return "walk";
        case Command::ensemble: return "ensemble";
        case Command::fit: return "fit";
        case Command::experiment: return "experiment";
        case Command::crw_check: return "crw-check";
    }
    return "?";
}

RunConfig parse_config(const json& doc, const CliOverrides& overrides) {
    expect_object(doc, "config");
    reject_unknown_keys(doc,
                        {"command", "steps", "seed", "jobs", "subsample", "out", "record",
                         "thresholds", "realizations", "shared_sequence", "initial", "policy",
                         "grid", "fit", "crw"},
                        "config");

    RunConfig cfg;

    std::string command_str;
    if (doc.contains("command")) command_str = get_string(doc, "command", "config");
    if (overrides.command) {
        if (!command_str.empty() && command_str != *overrides.command)
            fail("config.command",
                 "config file says `" + command_str + "` but the CLI asked for `" +
                     *overrides.command + "`");
        command_str = *overrides.command;
    }
    if (command_str.empty()) fail("config.command", "missing command");
    cfg.command = command_from_name(command_str);

    if (doc.contains("steps")) {
        cfg.steps = get_int(doc, "steps", "config");
        if (cfg.steps < 1) fail("config.steps", "steps must be >= 1");
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer())
            fail("config.seed", "expected an unsigned integer");
        cfg.master_seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("jobs")) {
        cfg.jobs = get_int(doc, "jobs", "config");
        if (cfg.jobs < 1) fail("config.jobs", "jobs must be >= 1");
    }
    if (doc.contains("subsample")) {
        const int k = get_int(doc, "subsample", "config");
        if (k < 1) fail("config.subsample", "subsample must be >= 1");
        cfg.subsample = static_cast<std::size_t>(k);
    }
    if (doc.contains("out")) cfg.out_dir = get_string(doc, "out", "config");
    if (doc.contains("record")) {
        if (!doc.at("record").is_array()) fail("config.record", "expected an array of names");
        for (const auto& v : doc.at("record")) {
            if (!v.is_string()) fail("config.record", "expected an array of names");
            cfg.record.push_back(v.get<std::string>());
        }
    }
    if (doc.contains("thresholds")) {
        if (!doc.at("thresholds").is_array()) fail("config.thresholds", "expected an array");
        cfg.thresholds.clear();
        for (const auto& v : doc.at("thresholds")) {
            if (!v.is_number() || !(v.get<double>() > 0.0 && v.get<double>() < 1.0))
                fail("config.thresholds", "thresholds must lie in (0,1)");
            cfg.thresholds.push_back(v.get<double>());
        }
    }
    if (doc.contains("realizations")) {
        cfg.realizations = get_int(doc, "realizations", "config");
        if (cfg.realizations < 1) fail("config.realizations", "realizations must be >= 1");
    }
    if (doc.contains("shared_sequence")) {
        if (!doc.at("shared_sequence").is_boolean())
            fail("config.shared_sequence", "expected a boolean");
        cfg.shared_sequence = doc.at("shared_sequence").get<bool>();
    }

    // Flag overrides take precedence over file values.
    if (overrides.seed) cfg.master_seed = *overrides.seed;
    if (overrides.steps) {
        if (*overrides.steps < 1) fail("--steps", "steps must be >= 1");
        cfg.steps = *overrides.steps;
    }
    if (overrides.jobs) {
        if (*overrides.jobs < 1) fail("--jobs", "jobs must be >= 1");
        cfg.jobs = *overrides.jobs;
    }
    if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
    if (overrides.subsample) {
        if (*overrides.subsample < 1) fail("--subsample", "subsample must be >= 1");
        cfg.subsample = *overrides.subsample;
    }
    cfg.dry_run = overrides.dry_run;

    if (doc.contains("policy"))
        cfg.policy = parse_policy_block(doc.at("policy"), "config.policy");
    if (doc.contains("initial"))
        cfg.initial = parse_initial_block(doc.at("initial"), "config.initial");
    if (doc.contains("grid"))
        cfg.grid = parse_grid_block(doc.at("grid"), "config.grid", cfg.master_seed);

    if (doc.contains("fit")) {
        const auto& f = doc.at("fit");
        expect_object(f, "config.fit");
        reject_unknown_keys(f, {"input", "column", "t_min", "exponent"}, "config.fit");
        cfg.fit.input = get_string(f, "input", "config.fit");
        if (f.contains("column")) cfg.fit.column = get_string(f, "column", "config.fit");
        if (f.contains("t_min")) cfg.fit.t_min = get_int(f, "t_min", "config.fit");
        if (f.contains("exponent")) cfg.fit.exponent = get_number(f, "exponent", "config.fit");
    }
    if (doc.contains("crw")) {
        const auto& c = doc.at("crw");
        expect_object(c, "config.crw");
        reject_unknown_keys(c, {"p", "realizations"}, "config.crw");
        cfg.crw.p = check_prob(get_number_or(c, "p", "config.crw", 0.5), "config.crw.p");
        if (c.contains("realizations")) {
            cfg.crw.realizations = get_int(c, "realizations", "config.crw");
            if (cfg.crw.realizations < 1) fail("config.crw.realizations", "must be >= 1");
        }
    }

    // Per-command completeness checks, before any computation starts.
    switch (cfg.command) {
        case Command::walk:
            if (!cfg.initial) fail("config.initial", "walk needs an initial-state block");
            if (!cfg.policy) fail("config.policy", "walk needs a policy block");
            validate_policy(*cfg.policy, cfg.steps);
            break;
        case Command::ensemble:
            if (!cfg.grid) fail("config.grid", "ensemble needs a grid block");
            if (!cfg.policy) fail("config.policy", "ensemble needs a policy block");
            validate_policy(*cfg.policy, cfg.steps);
            break;
        case Command::fit:
            if (cfg.fit.input.empty()) fail("config.fit.input", "fit needs an input CSV");
            break;
        case Command::experiment:
        case Command::crw_check:
            break;
    }

    // Canonical resolved document: file values with overrides applied.
    json canon = doc;
    canon["command"] = command_name(cfg.command);
    canon["steps"] = cfg.steps;
    canon["seed"] = cfg.master_seed;
    canon["jobs"] = cfg.jobs;
    canon["subsample"] = cfg.subsample;
    canon["out"] = cfg.out_dir;
    cfg.canonical = std::move(canon);
    return cfg;
}

RunConfig parse_config_file(const std::string& path, const CliOverrides& overrides) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(doc, overrides);
}

std::string config_hash(const json& canonical) {
    const std::string dump = canonical.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qwalk
