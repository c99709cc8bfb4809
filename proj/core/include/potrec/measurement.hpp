#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "potrec/helmholtz.hpp"
#include "potrec/waves.hpp"

namespace potrec {

enum class Provenance { FullNonlinear, DirectLinearized };

/// How the u0 Neumann data is removed from the full-problem data.
enum class NeumannReference {
    /// Numerical trace of the discrete u0 computed with the same operator and stencil.
    Discrete,
    /// Exact i (zeta.nu) exp(i zeta.x).
    Analytic,
};

std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view s);
std::string_view to_string(NeumannReference r);
NeumannReference parse_reference(std::string_view s);

struct MeasurementOptions {
    Provenance mode = Provenance::FullNonlinear;
    NeumannReference reference = NeumannReference::Discrete;
    double noise_level = 0.0;
    std::uint64_t seed = 0;
    SolverOptions solver;
    TraceOptions trace;
};

/// Linearized Neumann data g1' for one probe pair.
struct MeasurementRecord {
    WaveVectorPair pair;
    BoundaryTrace g1_prime;
    double noise_level = 0.0;
    Provenance provenance = Provenance::FullNonlinear;
    std::optional<NearEigenvalueWarning> warning;
};

/// Owns the factorized operators for one (grid, c, k, b) and produces
/// measurements for any number of probes. Safe to call concurrently.
class MeasurementSynthesizer {
public:
    MeasurementSynthesizer(const Grid& grid, const PotentialField& c, const BoundaryDiscretization& boundary,
                           double k, double b, MeasurementOptions options = {});

    /// `stream` selects an independent noise sequence (e.g. the plan index).
    [[nodiscard]] MeasurementRecord measure(const WaveVectorPair& pair, std::uint64_t stream = 0) const;

    /// Intermediate fields for one probe, for figure output.
    struct Fields {
        ComplexField u;
        ComplexField u0;
        BoundaryTrace g0;
        BoundaryTrace g1;
        BoundaryTrace g1_prime;
    };
    [[nodiscard]] Fields forward_fields(const WaveVectorPair& pair) const;

    [[nodiscard]] const Grid& grid() const { return *grid_; }
    [[nodiscard]] const BoundaryDiscretization& boundary() const { return *boundary_; }
    [[nodiscard]] const PotentialField& potential() const { return *c_; }
    [[nodiscard]] double k() const { return k_; }
    [[nodiscard]] double b() const { return b_; }
    [[nodiscard]] const MeasurementOptions& options() const { return options_; }
    [[nodiscard]] const std::optional<NearEigenvalueWarning>& resonance() const { return homogeneous_.resonance(); }

private:
    const Grid* grid_;
    const PotentialField* c_;
    const BoundaryDiscretization* boundary_;
    double k_;
    double b_;
    MeasurementOptions options_;
    HelmholtzSystem homogeneous_;
    std::optional<HelmholtzSystem> full_;
};

/// One-shot convenience wrapper (assembles and factorizes per call).
MeasurementRecord synthesize_measurement(const Grid& grid, const PotentialField& c, const WaveVectorPair& pair,
                                         const BoundaryDiscretization& boundary, Provenance mode,
                                         double noise_level, std::uint64_t seed = 0);

/// Adds zero-mean circular complex Gaussian noise scaled so that its
/// boundary L2 norm equals level * ||trace||.
void add_relative_noise(BoundaryTrace& trace, double level, std::uint64_t seed, std::uint64_t stream);

/// Computable proxy for the operator norm of the linearized map:
/// max over records of ||g1'||_L2 / ||g0||_L2 on the boundary.
double dtn_norm_estimate(std::span<const MeasurementRecord> records);

}  // namespace potrec
