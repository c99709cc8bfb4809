// potrec: command-line front end for the reconstruction toolkit.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "potrec/config.hpp"
#include "potrec/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Fourier-mode reconstruction of Schrodinger potentials from boundary data"};
    app.set_version_flag("--version", potrec::version());
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<int> workers;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<double> noise;
    bool quiet = false;

    app.add_option("--config", config_path, "Experiment config (INI); defaults apply when omitted")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
    app.add_option("--workers", workers, "Worker threads for probe solves (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "Noise seed (overrides [measurement] seed)");
    app.add_option("--mode", mode, "Measurement synthesis mode")->check(CLI::IsMember({"full", "linearized"}));
    app.add_option("--noise", noise, "Relative noise level on the Neumann data")->check(CLI::NonNegativeNumber);
    app.add_flag("-q,--quiet", quiet, "Suppress progress output");

    const char* commands[][2] = {
        {"forward", "Solve one probe and write u0, g0, g1, u - u0 and g1'"},
        {"reconstruct", "Measure, recover Fourier modes and synthesize for every k and truncation multiplier"},
        {"sweep-k", "Reconstruct with K = 2k over the k list"},
        {"bounds", "Evaluate the stability bounds and the optimal wavenumber"},
        {"attenuation", "Reconstruct over the attenuation list and report the attenuated bound"},
    };
    for (const auto& c : commands) app.add_subcommand(c[0], c[1]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version requests exit 0; usage errors share the config error code.
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    potrec::ExperimentConfig cfg;
    try {
        cfg = config_path.empty() ? potrec::parse_config("") : potrec::load_config(config_path);
        if (out_dir) cfg.output_dir = *out_dir;
        if (workers) cfg.workers = *workers;
        if (seed) cfg.measurement.seed = *seed;
        if (mode) cfg.measurement.mode = potrec::parse_provenance(*mode);
        if (noise) cfg.measurement.noise = *noise;
    } catch (const potrec::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return potrec::exit_code(e);
    }

    const int rc = potrec::run_command(command, cfg, std::cerr, quiet ? nullptr : &std::clog);
    if (rc == 0 && !quiet) std::clog << "outputs written to " << cfg.output_dir.string() << '\n';
    return rc;
}
