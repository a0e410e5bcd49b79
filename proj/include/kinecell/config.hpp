#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kinecell/scenario.hpp"
#include "kinecell/types.hpp"

namespace kinecell {

/// Run-control settings: a scenario selector plus overrides. Values are
/// loaded from a dotted key=value file, then amended by CLI --set pairs
/// (CLI wins over file, file wins over scenario defaults).
struct RunConfig {
    std::string scenario;

    std::optional<int> nx, ny, nvel;
    std::optional<double> plates_kn;

    std::optional<std::string> cfl_mode;  // "strict" | "relaxed"
    std::optional<double> cfl_c;
    std::optional<std::string> integrator;  // "explicit" | "semi_implicit"

    // End condition: exactly one of these.
    std::optional<long> steps;
    std::optional<double> t_end;
    std::optional<double> stationary_threshold;
    int stationary_window = 100;

    std::string output_dir = ".";
    std::string output_prefix = "kinecell";
    long cadence = 1;
    long fields_every = 0;  // 0 = no field snapshots
    bool deterministic = true;
    int threads = 1;

    void validate() const;
};

/// Parses the key=value file ('#' starts a comment). Unknown keys are
/// configuration errors; the recognized set is documented in
/// docs/config_keys.md.
RunConfig parse_config_file(const std::string& path);

/// Applies one "key=value" override.
void apply_override(RunConfig& cfg, const std::string& pair);

/// Scenario instantiated with the config's resolution/physics overrides.
ScenarioSpec configure_scenario(const RunConfig& cfg);

}  // namespace kinecell
