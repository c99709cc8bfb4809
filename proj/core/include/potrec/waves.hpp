#pragma once

#include <span>
#include <vector>

#include "potrec/common.hpp"
#include "potrec/grid.hpp"

namespace potrec {

/// Complex exponential probe pair u0 = exp(i zeta.x), v = exp(i zeta_star.x)
/// with zeta + zeta_star = xi and zeta.zeta = zeta_star.zeta_star = k^2 - i k b.
///
/// e1 = xi/|xi| and e2 is e1 rotated counterclockwise by 90 degrees. mu is the
/// principal square root of k^2 - |xi|^2/4 - i k b (Re mu >= 0, and Im mu >= 0
/// when Re mu = 0), so for b = 0 and |xi| > 2k it equals i*sqrt(|xi|^2/4 - k^2)
/// and u0 decays along +e2.
struct WaveVectorPair {
    Vec2 xi;
    Vec2 e1;
    Vec2 e2;
    double k = 0.0;
    double b = 0.0;
    cplx mu;
    CVec2 zeta;
    CVec2 zeta_star;

    [[nodiscard]] double kappa() const { return norm(xi); }
    [[nodiscard]] bool evanescent() const { return b == 0.0 && kappa() > 2.0 * k; }
};

enum class Probe { U0, V };

WaveVectorPair make_wave_pair(Vec2 xi, double k, double b = 0.0);

cplx eval_probe(const WaveVectorPair& pair, Probe which, Vec2 x);
std::vector<cplx> eval_probe(const WaveVectorPair& pair, Probe which, std::span<const Vec2> points);

/// Samples of a field on the boundary circle.
struct BoundaryTrace {
    const BoundaryDiscretization* boundary = nullptr;
    std::vector<cplx> values;

    [[nodiscard]] std::size_t size() const { return values.size(); }
    /// L2(boundary) norm using the arc-length weights.
    [[nodiscard]] double l2_norm() const;
};

/// Exact normal derivative i (zeta.nu) exp(i zeta.x) of u0 on the boundary.
BoundaryTrace neumann_of_probe(const WaveVectorPair& pair, const BoundaryDiscretization& boundary);

/// Dirichlet trace of u0 on the boundary.
BoundaryTrace dirichlet_of_probe(const WaveVectorPair& pair, const BoundaryDiscretization& boundary);

/// Y = Im sqrt(k^2 - |xi|^2/4 - i k b) on the principal branch (negative for b > 0).
double attenuated_Y(double xi_norm, double k, double b);

/// Same quantity from the real closed-form expressions of the attenuated
/// construction: |Y| = kb / (2X) with X the real part, and for |xi|^2 > 4k^2
/// Y = -1/2 sqrt((|xi|^2/2 - 2k^2) + sqrt((|xi|^2/2 - 2k^2)^2 + 4k^2 b^2)).
double attenuated_Y_closed_form(double xi_norm, double k, double b);

}  // namespace potrec
