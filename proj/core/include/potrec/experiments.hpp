#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "potrec/config.hpp"

namespace potrec {

/// Record of one command run, written as manifest.json next to its outputs.
struct RunManifest {
    std::string command;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string version;
    std::vector<std::pair<std::string, double>> timings;  // stage, seconds
    std::vector<std::string> warnings;
    std::vector<std::string> outputs;  // relative to the output directory

    [[nodiscard]] std::string to_json() const;
};

/// Library version string.
std::string version();

// Each command writes into cfg.output_dir and returns its manifest (also
// written to disk). Progress lines go to `log` when it is non-null; they
// never influence results.
RunManifest cmd_forward(const ExperimentConfig& cfg, std::ostream* log = nullptr);
RunManifest cmd_reconstruct(const ExperimentConfig& cfg, std::ostream* log = nullptr);
RunManifest cmd_sweep_k(const ExperimentConfig& cfg, std::ostream* log = nullptr);
RunManifest cmd_bounds(const ExperimentConfig& cfg, std::ostream* log = nullptr);
RunManifest cmd_attenuation(const ExperimentConfig& cfg, std::ostream* log = nullptr);

/// Process exit code for an error: 2 for configuration, domain, geometry and
/// degenerate-input errors, 3 for solver failures, 4 for coverage errors.
int exit_code(const Error& e);

/// Dispatches `command` and maps errors to exit codes, reporting them on `err`.
int run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& err,
                std::ostream* log = nullptr);

}  // namespace potrec
