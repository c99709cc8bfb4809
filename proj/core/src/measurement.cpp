#include "potrec/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace potrec {

std::string_view to_string(Provenance p) {
    return p == Provenance::FullNonlinear ? "full" : "linearized";
}

Provenance parse_provenance(std::string_view s) {
    if (s == "full" || s == "full-nonlinear-synthesis") return Provenance::FullNonlinear;
    if (s == "linearized" || s == "direct-linearized") return Provenance::DirectLinearized;
    throw ConfigError("unknown measurement mode '" + std::string(s) + "' (expected full or linearized)");
}

std::string_view to_string(NeumannReference r) {
    return r == NeumannReference::Discrete ? "discrete" : "analytic";
}

NeumannReference parse_reference(std::string_view s) {
    if (s == "discrete") return NeumannReference::Discrete;
    if (s == "analytic") return NeumannReference::Analytic;
    throw ConfigError("unknown Neumann reference '" + std::string(s) + "' (expected discrete or analytic)");
}

MeasurementSynthesizer::MeasurementSynthesizer(const Grid& grid, const PotentialField& c,
                                               const BoundaryDiscretization& boundary, double k, double b,
                                               MeasurementOptions options)
    : grid_(&grid),
      c_(&c),
      boundary_(&boundary),
      k_(k),
      b_(b),
      options_(options),
      homogeneous_(grid, nullptr, k, b, options.solver) {
    if (options.noise_level < 0.0) throw ConfigError("noise level must be nonnegative");
    if (!c.grid().same_layout(grid)) throw ConfigError("potential lives on a different grid");
    if (options.mode == Provenance::FullNonlinear) {
        full_.emplace(grid, &c, k, b, options.solver);
    }
}

MeasurementSynthesizer::Fields MeasurementSynthesizer::forward_fields(const WaveVectorPair& pair) const {
    if (!full_) throw ConfigError("forward fields need the full-nonlinear mode");
    const BoundaryFunction g0 = [pair](Vec2 x) { return eval_probe(pair, Probe::U0, x); };
    Fields f{full_->solve(g0), homogeneous_.solve(g0), dirichlet_of_probe(pair, *boundary_), {}, {}};
    f.g1 = neumann_trace(f.u, *boundary_, options_.trace);
    const BoundaryTrace ref = options_.reference == NeumannReference::Discrete
                                  ? neumann_trace(f.u0, *boundary_, options_.trace)
                                  : neumann_of_probe(pair, *boundary_);
    f.g1_prime = f.g1;
    for (std::size_t j = 0; j < ref.size(); ++j) f.g1_prime.values[j] -= ref.values[j];
    return f;
}

MeasurementRecord MeasurementSynthesizer::measure(const WaveVectorPair& pair, std::uint64_t stream) const {
    if (std::abs(pair.k - k_) > 1e-12 * k_ || std::abs(pair.b - b_) > 1e-12 * std::max(1.0, b_)) {
        throw ConfigError("probe pair was built for a different (k, b) than the synthesizer");
    }
    MeasurementRecord rec;
    rec.pair = pair;
    rec.provenance = options_.mode;
    rec.noise_level = options_.noise_level;

    if (options_.mode == Provenance::FullNonlinear) {
        const BoundaryFunction g0 = [pair](Vec2 x) { return eval_probe(pair, Probe::U0, x); };
        const ComplexField u = full_->solve(g0);
        rec.g1_prime = neumann_trace(u, *boundary_, options_.trace);
        if (options_.reference == NeumannReference::Discrete) {
            const ComplexField u0 = homogeneous_.solve(g0);
            const BoundaryTrace ref = neumann_trace(u0, *boundary_, options_.trace);
            for (std::size_t j = 0; j < ref.size(); ++j) rec.g1_prime.values[j] -= ref.values[j];
        } else {
            const BoundaryTrace ref = neumann_of_probe(pair, *boundary_);
            for (std::size_t j = 0; j < ref.size(); ++j) rec.g1_prime.values[j] -= ref.values[j];
        }
        rec.warning = u.warning;
    } else {
        const ComplexField u1 = solve_linearized(homogeneous_, *c_, pair);
        rec.g1_prime = neumann_trace(u1, *boundary_, options_.trace);
        rec.warning = u1.warning;
    }
    if (!rec.warning && homogeneous_.resonance()) rec.warning = homogeneous_.resonance();

    if (options_.noise_level > 0.0) {
        add_relative_noise(rec.g1_prime, options_.noise_level, options_.seed, stream);
    }
    return rec;
}

MeasurementRecord synthesize_measurement(const Grid& grid, const PotentialField& c, const WaveVectorPair& pair,
                                         const BoundaryDiscretization& boundary, Provenance mode,
                                         double noise_level, std::uint64_t seed) {
    MeasurementOptions opt;
    opt.mode = mode;
    opt.noise_level = noise_level;
    opt.seed = seed;
    const MeasurementSynthesizer synth(grid, c, boundary, pair.k, pair.b, opt);
    return synth.measure(pair);
}

void add_relative_noise(BoundaryTrace& trace, double level, std::uint64_t seed, std::uint64_t stream) {
    if (level < 0.0) throw ConfigError("noise level must be nonnegative");
    if (level == 0.0 || trace.values.empty()) return;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);

    BoundaryTrace eta{trace.boundary, std::vector<cplx>(trace.size())};
    for (auto& e : eta.values) {
        const double re = normal(rng);
        const double im = normal(rng);
        e = {re, im};
    }
    const double target = level * trace.l2_norm();
    const double have = eta.l2_norm();
    if (have == 0.0) return;
    const double s = target / have;
    for (std::size_t j = 0; j < trace.size(); ++j) trace.values[j] += s * eta.values[j];
}

double dtn_norm_estimate(std::span<const MeasurementRecord> records) {
    if (records.empty()) throw ConfigError("operator norm estimate needs at least one record");
    double best = 0.0;
    for (const auto& r : records) {
        const BoundaryTrace g0 = dirichlet_of_probe(r.pair, *r.g1_prime.boundary);
        const double denom = g0.l2_norm();
        if (denom > 0.0) best = std::max(best, r.g1_prime.l2_norm() / denom);
    }
    return best;
}

}  // namespace potrec
