#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "potrec/common.hpp"
#include "potrec/grid.hpp"
#include "potrec/potential.hpp"
#include "potrec/waves.hpp"

namespace potrec {

using BoundaryFunction = std::function<cplx(Vec2)>;

/// Diagnostic attached to solves that are close to a Dirichlet resonance.
struct NearEigenvalueWarning {
    double k = 0.0;
    double residual = 0.0;
    /// Nearest Dirichlet eigen-wavenumber j_{m,n}/radius of the continuous disk, 0 if not checked.
    double nearest_eigen_k = 0.0;
    double relative_gap = 0.0;
    std::string reason;
};

/// Solution values on interior nodes plus the Dirichlet data they were solved with.
struct ComplexField {
    const Grid* grid = nullptr;
    std::vector<cplx> values;
    BoundaryFunction dirichlet;
    double residual = 0.0;
    std::optional<NearEigenvalueWarning> warning;
};

struct SolverOptions {
    double residual_tolerance = 1e-10;
    /// Relative distance in k to a disk eigen-wavenumber that triggers a warning (b = 0 only).
    double eigen_gap_tolerance = 1e-3;
    /// Weight gamma of the dispersion correction: the Laplacian is scaled by
    /// 1 + gamma (k^2 - i k b) h^2 / 12. Zero gives the plain 5-point operator;
    /// 3/4 balances the direction-dependent phase error of the 5-point stencil.
    double dispersion_gamma = 0.75;
};

/// Finite-difference operator -Lap - (k^2 - c) + i k b on the disk with
/// Shortley-Weller closure at the circle, factorized once on construction.
/// Row for an interior node: -s Lap_h u + (-k^2 + c + i k b) u with the
/// dispersion scale s = 1 + gamma (k^2 - i k b) h^2 / 12.
/// Thread-safe for concurrent solves.
class HelmholtzSystem {
public:
    HelmholtzSystem(const Grid& grid, const PotentialField* c, double k, double b = 0.0,
                    SolverOptions options = {});
    ~HelmholtzSystem();
    HelmholtzSystem(HelmholtzSystem&&) noexcept;
    HelmholtzSystem& operator=(HelmholtzSystem&&) noexcept;

    [[nodiscard]] const Grid& grid() const { return *grid_; }
    [[nodiscard]] double k() const { return k_; }
    [[nodiscard]] double b() const { return b_; }
    [[nodiscard]] std::size_t dimension() const { return grid_->interior_count(); }
    /// Scale applied to the discrete Laplacian.
    [[nodiscard]] cplx laplacian_scale() const { return scale_; }

    /// Matrix entry (row, col) of the assembled operator.
    [[nodiscard]] cplx entry(std::size_t row, std::size_t col) const;
    /// A x for a vector on interior nodes.
    [[nodiscard]] std::vector<cplx> apply(std::span<const cplx> x) const;
    /// Right-hand side from Dirichlet data and an optional volume source on interior nodes.
    [[nodiscard]] std::vector<cplx> rhs(const BoundaryFunction& g0, std::span<const cplx> source = {}) const;

    /// Solves the Dirichlet problem. A residual above tolerance attaches a
    /// near-eigenvalue warning instead of failing.
    [[nodiscard]] ComplexField solve(const BoundaryFunction& g0, std::span<const cplx> source = {}) const;

    /// Warning derived from proximity of k to a disk Dirichlet eigenvalue, if any.
    [[nodiscard]] const std::optional<NearEigenvalueWarning>& resonance() const { return resonance_; }

private:
    struct Impl;
    const Grid* grid_;
    double k_;
    double b_;
    SolverOptions options_;
    cplx scale_;
    std::unique_ptr<Impl> impl_;
    std::optional<NearEigenvalueWarning> resonance_;
};

/// Solves the homogeneous-data linearized problem with source -c u0, using
/// the factorized operator of `homogeneous` (which must have c = 0).
ComplexField solve_linearized(const HelmholtzSystem& homogeneous, const PotentialField& c, const WaveVectorPair& pair);
ComplexField solve_linearized(const Grid& grid, const PotentialField& c, const WaveVectorPair& pair);

struct TraceOptions {
    /// Radial sample spacing in units of the grid spacing.
    double offset_factor = 1.5;
};

/// Outward normal derivative at the boundary samples: one-sided third-order
/// radial difference from the Dirichlet value and three interior samples,
/// each obtained by biquadratic interpolation of the nodal values.
BoundaryTrace neumann_trace(const ComplexField& field, const BoundaryDiscretization& boundary,
                            TraceOptions options = {});

/// Interpolated field value at an interior point (throws GeometryError if
/// the stencil leaves the disk).
cplx interpolate(const ComplexField& field, Vec2 p, Vec2 outward);

/// Dirichlet eigen-wavenumbers j_{m,n}/radius of the disk up to k_max, sorted.
std::vector<double> disk_dirichlet_wavenumbers(double radius, double k_max);

/// Near-resonance check against the continuous disk spectrum.
std::optional<NearEigenvalueWarning> resonance_check(double radius, double k, double gap_tolerance);

}  // namespace potrec
