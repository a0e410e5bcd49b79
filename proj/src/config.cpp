#include "kinecell/config.hpp"

#include <fstream>
#include <sstream>

namespace kinecell {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long out = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "scenario") cfg.scenario = value;
    else if (key == "grid.nx") cfg.nx = static_cast<int>(parse_long(key, value));
    else if (key == "grid.ny") cfg.ny = static_cast<int>(parse_long(key, value));
    else if (key == "velocity.n") cfg.nvel = static_cast<int>(parse_long(key, value));
    else if (key == "plates.kn") cfg.plates_kn = parse_double(key, value);
    else if (key == "cfl.mode") {
        if (value != "strict" && value != "relaxed")
            throw ConfigError("cfl.mode must be 'strict' or 'relaxed'");
        cfg.cfl_mode = value;
    } else if (key == "cfl.c") cfg.cfl_c = parse_double(key, value);
    else if (key == "integrator") {
        if (value != "explicit" && value != "semi_implicit")
            throw ConfigError("integrator must be 'explicit' or 'semi_implicit'");
        cfg.integrator = value;
    } else if (key == "end.steps") cfg.steps = parse_long(key, value);
    else if (key == "end.time") cfg.t_end = parse_double(key, value);
    else if (key == "end.stationary_threshold") cfg.stationary_threshold = parse_double(key, value);
    else if (key == "end.stationary_window")
        cfg.stationary_window = static_cast<int>(parse_long(key, value));
    else if (key == "output.dir") cfg.output_dir = value;
    else if (key == "output.prefix") cfg.output_prefix = value;
    else if (key == "output.cadence") cfg.cadence = parse_long(key, value);
    else if (key == "output.fields_every") cfg.fields_every = parse_long(key, value);
    else if (key == "run.deterministic") cfg.deterministic = parse_bool(key, value);
    else if (key == "run.threads") cfg.threads = static_cast<int>(parse_long(key, value));
    else throw ConfigError("unrecognized configuration key '" + key + "'");
}

}  // namespace

void RunConfig::validate() const {
    if (scenario.empty()) throw ConfigError("no scenario selected");
    int ends = 0;
    if (steps) ++ends;
    if (t_end) ++ends;
    if (stationary_threshold) ++ends;
    if (ends != 1)
        throw ConfigError("exactly one end condition required: end.steps, end.time or "
                          "end.stationary_threshold");
    if (steps && *steps < 0) throw ConfigError("end.steps must be >= 0");
    if (cadence < 1) throw ConfigError("output.cadence must be >= 1");
    if (threads < 1) throw ConfigError("run.threads must be >= 1");
    if (stationary_window < 1) throw ConfigError("end.stationary_window must be >= 1");
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        set_key(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& pair) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + pair + "'");
    set_key(cfg, trim(pair.substr(0, eq)), trim(pair.substr(eq + 1)));
}

ScenarioSpec configure_scenario(const RunConfig& cfg) {
    ScenarioSpec s = [&]() -> ScenarioSpec {
        if (cfg.scenario == "plates")
            return plates_scenario(cfg.plates_kn.value_or(0.5), cfg.nx.value_or(400),
                                   cfg.ny.value_or(200), cfg.nvel.value_or(24));
        if (cfg.scenario == "crookes2d")
            return crookes2d_scenario(cfg.nx.value_or(400), cfg.nvel.value_or(30));
        if (cfg.scenario == "roots_blower")
            return roots_blower_scenario(cfg.nx.value_or(100), cfg.nvel.value_or(16));
        return make_scenario(cfg.scenario);  // throws with the unknown-name message
    }();
    if (cfg.ny) s.ny = *cfg.ny;
    if (cfg.cfl_mode) s.cfl_mode = *cfg.cfl_mode == "strict" ? CflMode::Strict : CflMode::Relaxed;
    if (cfg.cfl_c) s.cfl_c = *cfg.cfl_c;
    if (cfg.integrator)
        s.integrator = *cfg.integrator == "explicit" ? TimeIntegrator::Explicit
                                                     : TimeIntegrator::SemiImplicit;
    s.validate();
    return s;
}

}  // namespace kinecell
