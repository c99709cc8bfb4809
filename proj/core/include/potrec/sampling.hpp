#pragma once

#include <span>
#include <vector>

#include "potrec/common.hpp"

namespace potrec {

/// One phase-space sample xi = kappa * y_hat with its synthesis weight.
struct PhasePoint {
    int length = 0;  // index into the kappa set
    int line = 0;    // slope-line id in the unrestricted plan
    Vec2 xi;
    Vec2 direction;  // y_hat
    Vec2 companion;  // z_hat, y_hat rotated +90 degrees
    double kappa = 0.0;
    double theta = 0.0;
    double weight = 0.0;
};

/// Polar phase-space sampling: slope lines at angles s * 2pi/n_lines and
/// lengths kappa_min, kappa_min + d_kappa, ..., up to kappa_max. Weights are
/// polar midpoint cells kappa * d_kappa * d_theta / (2pi)^2, scaled when only
/// a subset of lines is kept.
class SamplingPlan {
public:
    [[nodiscard]] double k() const { return k_; }
    [[nodiscard]] int total_lines() const { return n_total_; }
    [[nodiscard]] std::span<const int> lines() const { return lines_; }
    [[nodiscard]] std::span<const double> kappas() const { return kappas_; }
    [[nodiscard]] double d_kappa() const { return d_kappa_; }
    [[nodiscard]] double d_theta() const { return 2.0 * kPi / n_total_; }
    [[nodiscard]] double kappa_max() const { return kappas_.back(); }
    /// Largest truncation multiplier m with m k covered by the plan.
    [[nodiscard]] double m_max() const { return kappa_max() / k_; }
    [[nodiscard]] double weight_scale() const { return weight_scale_; }

    [[nodiscard]] std::size_t size() const { return kappas_.size() * lines_.size(); }
    /// Points in traversal order: lengths outer, lines inner.
    [[nodiscard]] PhasePoint point(std::size_t index) const;
    [[nodiscard]] std::vector<PhasePoint> points() const;

    friend SamplingPlan build_sampling(int, double, double, double, double);
    friend SamplingPlan restrict_lines(const SamplingPlan&, std::span<const int>);

private:
    double k_ = 0.0;
    int n_total_ = 0;
    std::vector<int> lines_;
    std::vector<double> kappas_;
    double d_kappa_ = 0.0;
    double weight_scale_ = 1.0;
};

SamplingPlan build_sampling(int n_lines, double kappa_min, double kappa_max, double d_kappa, double k);

/// Keeps the listed slope lines (ids of the full plan) and rescales the
/// weights by n_lines / |subset|.
SamplingPlan restrict_lines(const SamplingPlan& plan, std::span<const int> line_indices);

/// `count` line ids of an n_lines plan whose directions modulo pi are as
/// evenly spread as possible.
std::vector<int> spread_lines(int n_lines, int count);

/// Weighted Fourier mode used for synthesis.
struct WeightedMode {
    Vec2 xi;
    double kappa = 0.0;
    double weight = 0.0;
    cplx value;
    int length = 0;
    int line = 0;
    bool mirror = false;
};

/// Closes a set of weighted modes under xi -> -xi with conjugate values.
/// A mode whose mirror is present gets the average of its value and the
/// conjugated mirror value; a mode without one is split into two halves of
/// its weight at +xi and -xi.
std::vector<WeightedMode> hermitian_complete(std::span<const WeightedMode> modes);

/// Plan-aligned variant: coefficients[i] belongs to plan.point(i).
std::vector<WeightedMode> hermitian_complete(const SamplingPlan& plan, std::span<const cplx> coefficients);

}  // namespace potrec
