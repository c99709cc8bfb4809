#include "potrec/reconstruction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace potrec {

namespace {

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, n) on up to `workers` threads. The first
// exception thrown by any task is rethrown after all threads join.
template <class Body>
void parallel_for(std::size_t n, int workers, Body body) {
    const int w = std::min<int>(resolve_workers(workers), static_cast<int>(std::max<std::size_t>(n, 1)));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w - 1));
    for (int t = 1; t < w; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

constexpr double kKappaSlack = 1e-9;

}  // namespace

const CoefficientEntry* CoefficientTable::find(int length, int line) const {
    if (total_lines <= 0 || length < 0 || line < 0 || line >= total_lines) return nullptr;
    const auto idx = static_cast<std::size_t>(length) * static_cast<std::size_t>(total_lines) +
                     static_cast<std::size_t>(line);
    if (idx >= entries.size()) return nullptr;
    return &entries[idx];
}

cplx fourier_coefficient(const MeasurementRecord& record, const BoundaryDiscretization& boundary) {
    if (record.g1_prime.size() != boundary.size()) {
        throw ConfigError("boundary trace and boundary discretization differ in size");
    }
    cplx sum(0.0, 0.0);
    for (std::size_t j = 0; j < boundary.size(); ++j) {
        if (record.g1_prime.values[j] == cplx(0.0, 0.0)) continue;
        sum += record.g1_prime.values[j] * eval_probe(record.pair, Probe::V, boundary.points[j]) * boundary.weights[j];
    }
    return sum;
}

CoefficientTable acquire_coefficients(const MeasurementSynthesizer& synth, const SamplingPlan& plan,
                                      const AcquireOptions& options) {
    if (std::abs(plan.k() - synth.k()) > 1e-12 * synth.k()) {
        throw ConfigError("sampling plan was built for a different wavenumber than the measurements");
    }
    if (plan.lines().size() != static_cast<std::size_t>(plan.total_lines())) {
        throw ConfigError("coefficients are acquired on the full plan; restrict lines at synthesis");
    }
    if (!(options.kappa_limit > 0.0)) throw ConfigError("kappa limit must be positive");

    std::size_t n_lengths = 0;
    for (double kap : plan.kappas()) {
        if (kap <= options.kappa_limit + kKappaSlack) ++n_lengths;
    }
    const std::size_t n = n_lengths * plan.lines().size();

    CoefficientTable table;
    table.k = synth.k();
    table.b = synth.b();
    table.kappa_limit = n_lengths == 0 ? 0.0 : plan.kappas()[n_lengths - 1];
    table.total_lines = plan.total_lines();
    table.n_forward = synth.grid().n_per_side();
    table.mode = synth.options().mode;
    table.entries.resize(n);
    std::vector<std::optional<NearEigenvalueWarning>> flags(n);

    const BoundaryDiscretization& boundary = synth.boundary();
    parallel_for(n, options.workers, [&](std::size_t i) {
        const PhasePoint p = plan.point(i);
        const WaveVectorPair pair = make_wave_pair(p.xi, synth.k(), synth.b());
        const auto stream = static_cast<std::uint64_t>(p.length) * static_cast<std::uint64_t>(plan.total_lines()) +
                            static_cast<std::uint64_t>(p.line);
        const MeasurementRecord rec = synth.measure(pair, stream);
        CoefficientEntry& e = table.entries[i];
        e.point = p;
        e.value = fourier_coefficient(rec, boundary);
        if (options.with_truth) e.truth = fourier_transform_midpoint(synth.potential(), p.xi);
        flags[i] = rec.warning;
    });

    if (const auto& r = synth.resonance()) table.warnings.push_back(*r);
    for (const auto& f : flags) {
        if (f && !(f->residual <= synth.options().solver.residual_tolerance)) {
            table.warnings.push_back(*f);
        }
    }
    return table;
}

std::vector<cplx> synthesize_modes(std::span<const WeightedMode> modes, const Grid& grid, int workers) {
    const std::size_t n = grid.interior_count();
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    constexpr std::size_t block = 64;
    const std::size_t n_blocks = (n + block - 1) / block;
    parallel_for(n_blocks, workers, [&](std::size_t b) {
        const std::size_t lo = b * block;
        const std::size_t hi = std::min(n, lo + block);
        for (std::size_t u = lo; u < hi; ++u) {
            const Vec2 x = grid.interior_point(u);
            cplx acc(0.0, 0.0);
            for (const auto& m : modes) {
                const double phase = dot(m.xi, x);
                acc += m.weight * m.value * cplx(std::cos(phase), -std::sin(phase));
            }
            out[u] = acc;
        }
    });
    return out;
}

std::vector<WeightedMode> truncated_modes(const CoefficientTable& table, const SamplingPlan& plan, double K) {
    if (!(K > 0.0)) throw ConfigError("truncation K must be positive");
    if (std::abs(plan.k() - table.k) > 1e-12 * table.k) {
        throw ConfigError("sampling plan and coefficient table use different wavenumbers");
    }
    if (plan.total_lines() != table.total_lines) {
        throw ConfigError("sampling plan and coefficient table use different line sets");
    }
    if (K > plan.kappa_max() + kKappaSlack || K > table.kappa_limit + plan.d_kappa() - kKappaSlack) {
        std::ostringstream msg;
        msg << "truncation K = " << K << " exceeds coefficient coverage; missing band ("
            << std::min(table.kappa_limit, plan.kappa_max()) << ", " << K << "]";
        throw CoverageError(msg.str());
    }

    std::vector<WeightedMode> modes;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const PhasePoint p = plan.point(i);
        if (p.kappa > K + kKappaSlack) break;
        const CoefficientEntry* e = table.find(p.length, p.line);
        if (e == nullptr) {
            std::ostringstream msg;
            msg << "no coefficient for kappa = " << p.kappa << " on line " << p.line;
            throw CoverageError(msg.str());
        }
        modes.push_back({p.xi, p.kappa, p.weight, e->value, p.length, p.line, false});
    }
    return hermitian_complete(modes);
}

PotentialField synthesize(const CoefficientTable& table, const SamplingPlan& plan, double K, const Grid& grid,
                          int workers) {
    const auto modes = truncated_modes(table, plan, K);
    const auto field = synthesize_modes(modes, grid, workers);
    std::vector<double> values(static_cast<std::size_t>(grid.n_per_side()) * grid.n_per_side(), 0.0);
    for (std::size_t u = 0; u < field.size(); ++u) {
        const auto [i, j] = grid.interior_nodes()[u];
        values[static_cast<std::size_t>(j) * grid.n_per_side() + i] = field[u].real();
    }
    return PotentialField(grid, std::move(values));
}

ErrorMetrics error_metrics(const PotentialField& c_inv, const PotentialField& c_true) {
    if (!c_inv.grid().same_layout(c_true.grid())) {
        throw ConfigError("error metrics need both fields on the same grid");
    }
    const Grid& g = c_true.grid();
    double diff2 = 0.0, ref2 = 0.0, diff_max = 0.0, ref_max = 0.0;
    for (std::size_t u = 0; u < g.interior_count(); ++u) {
        const double t = c_true.at_unknown(u);
        const double d = c_inv.at_unknown(u) - t;
        diff2 += d * d;
        ref2 += t * t;
        diff_max = std::max(diff_max, std::abs(d));
        ref_max = std::max(ref_max, std::abs(t));
    }
    if (ref2 == 0.0) throw DegenerateError("reference potential is zero; relative error undefined");
    return {std::sqrt(diff2 / ref2), diff_max / ref_max};
}

ReconstructionResult reconstruct(const CoefficientTable& table, const SamplingPlan& plan, double K,
                                 const Grid& inversion_grid, const PotentialField* c_true, int workers) {
    const auto modes = truncated_modes(table, plan, K);
    const auto field = synthesize_modes(modes, inversion_grid, workers);
    const int n = inversion_grid.n_per_side();
    std::vector<double> values(static_cast<std::size_t>(n) * n, 0.0);
    double re_max = 0.0, im_max = 0.0;
    for (std::size_t u = 0; u < field.size(); ++u) {
        const auto [i, j] = inversion_grid.interior_nodes()[u];
        values[static_cast<std::size_t>(j) * n + i] = field[u].real();
        re_max = std::max(re_max, std::abs(field[u].real()));
        im_max = std::max(im_max, std::abs(field[u].imag()));
    }
    ReconstructionResult r{PotentialField(inversion_grid, std::move(values)), K, 0.0, std::nullopt, table.warnings};
    r.imaginary_residue = re_max > 0.0 ? im_max / re_max : im_max;
    if (c_true != nullptr) r.errors = error_metrics(r.c_inv, *c_true);
    return r;
}

ReconstructionResult run_algorithm1(const MeasurementSynthesizer& synth, const SamplingPlan& plan, double m,
                                    const Grid& inversion_grid, const PotentialField* c_true, int workers) {
    if (!(m > 0.0)) throw ConfigError("truncation multiplier m must be positive");
    const double K = m * plan.k();
    AcquireOptions opt;
    opt.kappa_limit = K;
    opt.workers = workers;
    opt.with_truth = false;
    const CoefficientTable table = acquire_coefficients(synth, plan, opt);
    return reconstruct(table, plan, K, inversion_grid, c_true, workers);
}

}  // namespace potrec
