#pragma once

#include <optional>
#include <span>
#include <vector>

#include "potrec/measurement.hpp"
#include "potrec/potential.hpp"
#include "potrec/sampling.hpp"

namespace potrec {

/// Recovered Fourier coefficient at one phase point.
struct CoefficientEntry {
    PhasePoint point;
    cplx value;
    std::optional<cplx> truth;
};

/// Coefficients for the prefix of a full sampling plan with kappa <= kappa_limit.
/// Entries are in plan order (lengths outer, lines inner) and can be looked up
/// by (length, line), so any line subset of the plan can be synthesized from it.
struct CoefficientTable {
    std::vector<CoefficientEntry> entries;
    double k = 0.0;
    double b = 0.0;
    double kappa_limit = 0.0;
    int total_lines = 0;
    int n_forward = 0;
    Provenance mode = Provenance::FullNonlinear;
    std::vector<NearEigenvalueWarning> warnings;

    /// Entry for (length, line) or nullptr when it was not acquired.
    [[nodiscard]] const CoefficientEntry* find(int length, int line) const;
};

struct ErrorMetrics {
    double relative_l2 = 0.0;
    double relative_linf = 0.0;
};

struct ReconstructionResult {
    PotentialField c_inv;
    double truncation = 0.0;
    /// max |Im| / max |Re| of the synthesized field before the real part is taken.
    double imaginary_residue = 0.0;
    std::optional<ErrorMetrics> errors;
    std::vector<NearEigenvalueWarning> warnings;
};

/// Trapezoid rule for the boundary integral of g1' v.
cplx fourier_coefficient(const MeasurementRecord& record, const BoundaryDiscretization& boundary);

struct AcquireOptions {
    /// Only plan points with kappa <= kappa_limit are measured.
    double kappa_limit = 0.0;
    /// Worker threads; 0 picks the hardware concurrency.
    int workers = 0;
    /// Store the midpoint-rule transform of the forward potential next to each value.
    bool with_truth = true;
};

/// Measures every selected plan point and evaluates its Fourier coefficient.
/// Each point uses noise stream length * total_lines + line, so a line subset
/// sees exactly the data it would see inside the full plan. The result does
/// not depend on the worker count.
CoefficientTable acquire_coefficients(const MeasurementSynthesizer& synth, const SamplingPlan& plan,
                                      const AcquireOptions& options);

/// Complex field sum_modes weight * value * exp(-i xi.x) on the interior
/// nodes of `grid`, accumulated in the order of `modes`.
std::vector<cplx> synthesize_modes(std::span<const WeightedMode> modes, const Grid& grid, int workers = 0);

/// Weighted modes of `plan` with kappa <= K taken from `table`, Hermitian completed.
/// Throws CoverageError when K goes past the table or the plan.
std::vector<WeightedMode> truncated_modes(const CoefficientTable& table, const SamplingPlan& plan, double K);

/// Real part of the truncated, Hermitian-completed inverse transform on `grid`.
PotentialField synthesize(const CoefficientTable& table, const SamplingPlan& plan, double K, const Grid& grid,
                          int workers = 0);

/// Relative discrete L2 and Linf errors over the interior nodes.
ErrorMetrics error_metrics(const PotentialField& c_inv, const PotentialField& c_true);

/// Synthesis step with truncation K, imaginary residue and optional error metrics.
ReconstructionResult reconstruct(const CoefficientTable& table, const SamplingPlan& plan, double K,
                                 const Grid& inversion_grid, const PotentialField* c_true = nullptr,
                                 int workers = 0);

/// Full pipeline: measure the plan up to m k, then synthesize with K = m k.
ReconstructionResult run_algorithm1(const MeasurementSynthesizer& synth, const SamplingPlan& plan, double m,
                                    const Grid& inversion_grid, const PotentialField* c_true = nullptr,
                                    int workers = 0);

}  // namespace potrec
