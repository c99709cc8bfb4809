#include "potrec/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "potrec/bounds.hpp"
#include "potrec/output.hpp"
#include "potrec/reconstruction.hpp"
#include "potrec/sampling.hpp"

#ifndef POTREC_VERSION
#define POTREC_VERSION "0.0.0"
#endif

namespace potrec {

namespace fs = std::filesystem;

std::string version() { return POTREC_VERSION; }

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash));
    j["config_hash"] = hash;
    j["seed"] = seed;
    j["version"] = version;
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (const auto& [stage, seconds] : timings) t[stage] = seconds;
    j["timings_s"] = t;
    j["warnings"] = warnings;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - start_).count();
        start_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Short decimal tag for file names, e.g. 15.2 -> "15.2", 12.3625 -> "12.3625".
std::string tag(double v) {
    std::ostringstream o;
    o << std::setprecision(10) << v;
    return o.str();
}

std::string describe(const NearEigenvalueWarning& w) {
    std::ostringstream o;
    o << std::setprecision(8) << "k = " << w.k << ": " << w.reason;
    if (w.nearest_eigen_k > 0.0) o << " (nearest " << w.nearest_eigen_k << ", relative gap " << w.relative_gap << ")";
    if (w.residual > 0.0) o << ", residual " << w.residual;
    return o.str();
}

// Everything a run at one wavenumber needs; fields point into the grids, so
// a Scene stays where it was built.
struct Scene {
    Grid forward;
    Grid inversion;
    BoundaryDiscretization boundary;
    PotentialField c_forward;
    PotentialField c_truth;

    explicit Scene(const ExperimentConfig& cfg)
        : forward(Grid::build(cfg.domain.n_forward, cfg.domain.half_width, cfg.domain.radius)),
          inversion(Grid::build(cfg.domain.n_inversion, cfg.domain.half_width, cfg.domain.radius)),
          boundary(boundary_nodes(forward, cfg.domain.n_boundary)),
          c_forward(PotentialField::sample(forward, cfg.mixture(), cfg.potential.m1)),
          c_truth(PotentialField::sample(inversion, cfg.mixture(), cfg.potential.m1)) {
        if (cfg.potential.c_max > 0.0) c_forward.check_bound(cfg.potential.c_max);
    }
    Scene(const Scene&) = delete;
    Scene& operator=(const Scene&) = delete;
};

MeasurementOptions measurement_options(const ExperimentConfig& cfg) {
    MeasurementOptions o;
    o.mode = cfg.measurement.mode;
    o.reference = cfg.measurement.reference;
    o.noise_level = cfg.measurement.noise;
    o.seed = cfg.measurement.seed;
    return o;
}

SamplingPlan full_plan(const ExperimentConfig& cfg, double k) {
    return build_sampling(cfg.plan.n_lines, cfg.plan.kappa_min, cfg.plan.kappa_max, cfg.plan.d_kappa, k);
}

SamplingPlan synthesis_plan(const ExperimentConfig& cfg, const SamplingPlan& full) {
    if (!cfg.plan.lines.empty()) return restrict_lines(full, cfg.plan.lines);
    if (cfg.plan.line_count > 0 && cfg.plan.line_count < cfg.plan.n_lines) {
        const auto ids = spread_lines(cfg.plan.n_lines, cfg.plan.line_count);
        return restrict_lines(full, ids);
    }
    return full;
}

struct Session {
    const ExperimentConfig& cfg;
    std::ostream* log;
    RunManifest manifest;
    Stopwatch clock;

    Session(const ExperimentConfig& c, std::ostream* l, std::string command) : cfg(c), log(l) {
        manifest.command = std::move(command);
        manifest.config_hash = fnv1a(cfg.canonical());
        manifest.seed = cfg.measurement.seed;
        manifest.version = version();
        fs::create_directories(cfg.output_dir);
    }
    fs::path path(const std::string& name) {
        manifest.outputs.push_back(name);
        return cfg.output_dir / name;
    }
    void stage(const std::string& name) { manifest.timings.emplace_back(name, clock.lap()); }
    void note(const std::string& msg) {
        if (log != nullptr) *log << "[" << manifest.command << "] " << msg << '\n';
    }
    void warn(const std::string& w) {
        if (std::find(manifest.warnings.begin(), manifest.warnings.end(), w) == manifest.warnings.end()) {
            manifest.warnings.push_back(w);
            note("warning: " + w);
        }
    }
    RunManifest finish() {
        write_text(cfg.output_dir / "manifest.json", manifest.to_json());
        return manifest;
    }
};

std::string warning_cell(const std::vector<NearEigenvalueWarning>& ws) {
    std::string out;
    for (const auto& w : ws) out += (out.empty() ? "" : "; ") + describe(w);
    return out;
}

}  // namespace

RunManifest cmd_forward(const ExperimentConfig& cfg, std::ostream* log) {
    Session s(cfg, log, "forward");
    const Scene scene(cfg);
    const double k = cfg.physics.k_list.front();
    const double dn = norm(cfg.forward.direction);
    if (dn == 0.0) throw DegenerateError("forward.direction must be nonzero");
    const Vec2 xi = cfg.forward.direction * (cfg.forward.kappa / dn);
    const WaveVectorPair pair = make_wave_pair(xi, k, cfg.physics.b);
    s.stage("setup");

    MeasurementOptions opt = measurement_options(cfg);
    opt.mode = Provenance::FullNonlinear;
    const MeasurementSynthesizer synth(scene.forward, scene.c_forward, scene.boundary, k, cfg.physics.b, opt);
    s.stage("factorize");
    s.note("solving k = " + tag(k) + ", kappa = " + tag(cfg.forward.kappa));
    const auto f = synth.forward_fields(pair);
    s.stage("solve");
    if (f.u.warning) s.warn(describe(*f.u.warning));

    ComplexField scattered = f.u;
    for (std::size_t i = 0; i < scattered.values.size(); ++i) scattered.values[i] -= f.u0.values[i];

    write_field_csv(s.path("u0.csv"), f.u0);
    write_trace_csv(s.path("g0.csv"), f.g0);
    write_trace_csv(s.path("g1.csv"), f.g1);
    write_field_csv(s.path("u_minus_u0.csv"), scattered);
    write_trace_csv(s.path("g1_prime.csv"), f.g1_prime);
    write_grid_csv(s.path("potential.csv"), scene.c_forward);
    if (cfg.heatmaps) {
        write_heatmap(s.path("u0_re.pgm"), real_part(f.u0));
        write_heatmap(s.path("u_minus_u0_re.pgm"), real_part(scattered));
        write_heatmap(s.path("potential.pgm"), scene.c_forward);
    }
    s.stage("write");
    return s.finish();
}

RunManifest cmd_reconstruct(const ExperimentConfig& cfg, std::ostream* log) {
    Session s(cfg, log, "reconstruct");
    const Scene scene(cfg);
    write_grid_csv(s.path("potential_true.csv"), scene.c_truth);
    if (cfg.heatmaps) write_heatmap(s.path("potential_true.pgm"), scene.c_truth);
    s.stage("setup");

    CsvTable errors({"k", "m", "K", "lines", "rel_l2", "rel_linf", "imag_residue", "warnings"});
    const double m_max = *std::max_element(cfg.physics.m_list.begin(), cfg.physics.m_list.end());
    for (double k : cfg.physics.k_list) {
        const SamplingPlan full = full_plan(cfg, k);
        const SamplingPlan plan = synthesis_plan(cfg, full);
        if (m_max * k > full.kappa_max() + 1e-9) {
            std::ostringstream msg;
            msg << "truncation " << m_max << "k = " << m_max * k << " exceeds the plan's kappa_max = " << full.kappa_max()
                << "; missing band (" << full.kappa_max() << ", " << m_max * k << "]";
            throw CoverageError(msg.str());
        }
        const MeasurementSynthesizer synth(scene.forward, scene.c_forward, scene.boundary, k, cfg.physics.b,
                                           measurement_options(cfg));
        s.stage("factorize k=" + tag(k));
        s.note("measuring k = " + tag(k) + " up to kappa = " + tag(m_max * k));
        AcquireOptions acq;
        acq.kappa_limit = m_max * k;
        acq.workers = cfg.workers;
        const CoefficientTable table = acquire_coefficients(synth, full, acq);
        for (const auto& w : table.warnings) s.warn(describe(w));
        s.stage("measure k=" + tag(k));
        write_plan_csv(s.path("plan_k" + tag(k) + ".csv"), plan);
        write_coefficients_csv(s.path("coefficients_k" + tag(k) + ".csv"), table);

        for (double m : cfg.physics.m_list) {
            const double K = m * k;
            const auto r = reconstruct(table, plan, K, scene.inversion, &scene.c_truth, cfg.workers);
            const std::string stem = "c_inv_k" + tag(k) + "_m" + tag(m);
            write_grid_csv(s.path(stem + ".csv"), r.c_inv);
            if (cfg.heatmaps) write_heatmap(s.path(stem + ".pgm"), r.c_inv);
            errors.row({csv_number(k), csv_number(m), csv_number(K), std::to_string(plan.lines().size()),
                        csv_number(r.errors->relative_l2), csv_number(r.errors->relative_linf),
                        csv_number(r.imaginary_residue), warning_cell(table.warnings)});
            s.note("k = " + tag(k) + ", K = " + tag(K) + ": relative L2 error " + tag(r.errors->relative_l2));
        }
        s.stage("synthesize k=" + tag(k));
    }
    errors.write(s.path("errors.csv"));
    return s.finish();
}

RunManifest cmd_sweep_k(const ExperimentConfig& cfg, std::ostream* log) {
    Session s(cfg, log, "sweep-k");
    const Scene scene(cfg);
    s.stage("setup");
    CsvTable rows({"k", "K", "rel_l2", "rel_linf", "near_eigenvalue", "nearest_eigen_k", "relative_gap", "warnings"});
    for (double k : cfg.physics.k_list) {
        const SamplingPlan full = full_plan(cfg, k);
        const SamplingPlan plan = synthesis_plan(cfg, full);
        const MeasurementSynthesizer synth(scene.forward, scene.c_forward, scene.boundary, k, cfg.physics.b,
                                           measurement_options(cfg));
        s.note("k = " + tag(k));
        AcquireOptions acq;
        acq.kappa_limit = 2.0 * k;
        acq.workers = cfg.workers;
        acq.with_truth = false;
        const CoefficientTable table = acquire_coefficients(synth, full, acq);
        const auto r = reconstruct(table, plan, 2.0 * k, scene.inversion, &scene.c_truth, cfg.workers);
        for (const auto& w : table.warnings) s.warn(describe(w));
        const auto& res = synth.resonance();
        rows.row({csv_number(k), csv_number(2.0 * k), csv_number(r.errors->relative_l2),
                  csv_number(r.errors->relative_linf), res ? "1" : "0", res ? csv_number(res->nearest_eigen_k) : "",
                  res ? csv_number(res->relative_gap) : "", warning_cell(table.warnings)});
        if (cfg.heatmaps) write_heatmap(s.path("c_inv_k" + tag(k) + ".pgm"), r.c_inv);
        write_grid_csv(s.path("c_inv_k" + tag(k) + ".csv"), r.c_inv);
        s.stage("k=" + tag(k));
    }
    rows.write(s.path("sweep_k.csv"));
    return s.finish();
}

RunManifest cmd_bounds(const ExperimentConfig& cfg, std::ostream* log) {
    Session s(cfg, log, "bounds");
    const StabilityParams& p = cfg.bounds.params;
    const bool attenuated = p.b > 0.0;

    std::vector<std::string> header{"k", "status", "theorem1", "case_a", "case_b", "regime", "omega", "kstar_flag"};
    if (attenuated) {
        for (const char* h : {"theorem2", "t2_quadratic", "t2_linear_high", "t2_linear_low", "t2_tail"}) {
            header.emplace_back(h);
        }
    }
    CsvTable sweep(header);

    std::optional<OmegaOptimum> opt;
    std::string opt_error;
    try {
        opt = omega_and_kstar(p);
    } catch (const Error& e) {
        opt_error = e.what();
        s.warn("k* unavailable: " + opt_error);
    }

    const int n = cfg.bounds.samples;
    const double lmin = std::log(cfg.bounds.k_min);
    const double lmax = std::log(cfg.bounds.k_max);
    const double step = (lmax - lmin) / (n - 1);
    std::size_t rejected = 0;
    for (int i = 0; i < n; ++i) {
        const double k = std::exp(lmin + i * step);
        std::vector<std::string> row{csv_number(k)};
        try {
            const double t1 = theorem1_bound(k, p);
            const RegimeBound rb = regime_bounds(k, p);
            // Flag the sample closest to k* (in log spacing).
            const bool flag = opt && std::abs(std::log(k) - std::log(opt->k_star)) <= 0.5 * step;
            row.insert(row.end(), {"ok", csv_number(t1), csv_number(rb.case_a), csv_number(rb.case_b),
                                   rb.regime == Regime::LargeK ? "k>E" : "k<=E", csv_number(omega(k, p)),
                                   flag ? "1" : "0"});
            if (attenuated) {
                const Theorem2Terms t2 = theorem2_terms(k, p);
                row.insert(row.end(), {csv_number(t2.total()), csv_number(t2.quadratic), csv_number(t2.linear_high),
                                       csv_number(t2.linear_low), csv_number(t2.tail)});
            }
        } catch (const DomainError& e) {
            ++rejected;
            row.resize(1);
            row.push_back(std::string("rejected: ") + e.what());
            row.resize(header.size());
        }
        sweep.row(std::move(row));
    }
    if (rejected > 0) s.warn(std::to_string(rejected) + " of " + std::to_string(n) + " rows rejected by hypotheses");
    sweep.write(s.path("bounds.csv"));

    CsvTable ks({"quantity", "value"});
    if (opt) {
        ks.row({"E", csv_number(p.E())})
            .row({"C1", csv_number(p.C1())})
            .row({"C2", csv_number(p.C2())})
            .row({"k_star", csv_number(opt->k_star)})
            .row({"omega_k_star", csv_number(opt->omega_at_k_star)})
            .row({"omega_k_star_closed_form", csv_number(opt->omega_k_star_closed)})
            .row({"omega_one", csv_number(opt->omega_one)})
            .row({"omega_E", csv_number(opt->omega_E)})
            .row({"k_opt", csv_number(opt->k_opt)})
            .row({"omega_opt", csv_number(opt->omega_opt)})
            .row({"rule", opt->rule});
    } else {
        ks.row({"error", opt_error});
    }
    ks.write(s.path("kstar.csv"));
    s.stage("bounds");
    return s.finish();
}

RunManifest cmd_attenuation(const ExperimentConfig& cfg, std::ostream* log) {
    Session s(cfg, log, "attenuation");
    const Scene scene(cfg);
    const double k = cfg.physics.k_list.front();
    const SamplingPlan full = full_plan(cfg, k);
    const SamplingPlan plan = synthesis_plan(cfg, full);
    s.stage("setup");

    CsvTable rows({"b", "k", "K", "rel_l2", "rel_linf", "max_abs_Y", "theorem2", "warnings"});
    for (double b : cfg.physics.b_list) {
        if (b < 0.0) throw DomainError("attenuation values must be nonnegative");
        s.note("b = " + tag(b));
        const MeasurementSynthesizer synth(scene.forward, scene.c_forward, scene.boundary, k, b,
                                           measurement_options(cfg));
        AcquireOptions acq;
        acq.kappa_limit = 2.0 * k;
        acq.workers = cfg.workers;
        acq.with_truth = false;
        const CoefficientTable table = acquire_coefficients(synth, full, acq);
        const auto r = reconstruct(table, plan, 2.0 * k, scene.inversion, &scene.c_truth, cfg.workers);
        for (const auto& w : table.warnings) s.warn(describe(w));

        double y_max = 0.0;
        for (double kap : full.kappas()) {
            if (kap > 2.0 * k + 1e-9) break;
            y_max = std::max(y_max, std::abs(attenuated_Y(kap, k, b)));
        }
        std::string t2;
        if (b > 0.0) {
            StabilityParams p = cfg.bounds.params;
            p.b = b;
            try {
                t2 = csv_number(theorem2_bound(k, p));
            } catch (const DomainError& e) {
                t2 = std::string("rejected: ") + e.what();
            }
        }
        rows.row({csv_number(b), csv_number(k), csv_number(2.0 * k), csv_number(r.errors->relative_l2),
                  csv_number(r.errors->relative_linf), csv_number(y_max), t2, warning_cell(table.warnings)});
        if (cfg.heatmaps) write_heatmap(s.path("c_inv_b" + tag(b) + ".pgm"), r.c_inv);
        write_grid_csv(s.path("c_inv_b" + tag(b) + ".csv"), r.c_inv);
        s.stage("b=" + tag(b));
    }
    rows.write(s.path("attenuation.csv"));
    return s.finish();
}

int exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Solver:
            return 3;
        case ErrorKind::Coverage:
            return 4;
        default:
            return 2;
    }
}

int run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& err, std::ostream* log) {
    try {
        if (command == "forward") {
            cmd_forward(cfg, log);
        } else if (command == "reconstruct") {
            cmd_reconstruct(cfg, log);
        } else if (command == "sweep-k") {
            cmd_sweep_k(cfg, log);
        } else if (command == "bounds") {
            cmd_bounds(cfg, log);
        } else if (command == "attenuation") {
            cmd_attenuation(cfg, log);
        } else {
            err << "error: unknown command '" << command << "'\n";
            return 2;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e);
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace potrec
