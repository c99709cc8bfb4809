#include "potrec/waves.hpp"

#include <cmath>

namespace potrec {

WaveVectorPair make_wave_pair(Vec2 xi, double k, double b) {
    const double kappa = norm(xi);
    if (!(kappa > 0.0)) {
        throw DegenerateError("wave pair needs a nonzero phase-space vector xi");
    }
    if (!(k > 0.0)) {
        throw DomainError("wavenumber k must be positive");
    }
    if (b < 0.0) {
        throw DomainError("attenuation b must be nonnegative");
    }

    WaveVectorPair p;
    p.xi = xi;
    p.k = k;
    p.b = b;
    p.e1 = xi * (1.0 / kappa);
    p.e2 = rotate90(p.e1);

    const double a = (k - 0.5 * kappa) * (k + 0.5 * kappa);
    // +0.0 imaginary part for b == 0 keeps the sqrt on the upper side of its cut.
    const double im = b > 0.0 ? -k * b : 0.0;
    p.mu = std::sqrt(cplx(a, im));

    const double half = 0.5 * kappa;
    p.zeta = {half * p.e1.x + p.mu * p.e2.x, half * p.e1.y + p.mu * p.e2.y};
    p.zeta_star = {half * p.e1.x - p.mu * p.e2.x, half * p.e1.y - p.mu * p.e2.y};
    return p;
}

cplx eval_probe(const WaveVectorPair& pair, Probe which, Vec2 x) {
    const CVec2& z = which == Probe::U0 ? pair.zeta : pair.zeta_star;
    return std::exp(cplx(0.0, 1.0) * dot(z, x));
}

std::vector<cplx> eval_probe(const WaveVectorPair& pair, Probe which, std::span<const Vec2> points) {
    std::vector<cplx> out;
    out.reserve(points.size());
    for (const Vec2& x : points) out.push_back(eval_probe(pair, which, x));
    return out;
}

double BoundaryTrace::l2_norm() const {
    double s = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) s += std::norm(values[j]) * boundary->weights[j];
    return std::sqrt(s);
}

BoundaryTrace neumann_of_probe(const WaveVectorPair& pair, const BoundaryDiscretization& boundary) {
    BoundaryTrace t{&boundary, {}};
    t.values.reserve(boundary.size());
    const cplx I(0.0, 1.0);
    for (std::size_t j = 0; j < boundary.size(); ++j) {
        t.values.push_back(I * dot(pair.zeta, boundary.normals[j]) * eval_probe(pair, Probe::U0, boundary.points[j]));
    }
    return t;
}

BoundaryTrace dirichlet_of_probe(const WaveVectorPair& pair, const BoundaryDiscretization& boundary) {
    return {&boundary, eval_probe(pair, Probe::U0, boundary.points)};
}

double attenuated_Y(double xi_norm, double k, double b) {
    const double a = (k - 0.5 * xi_norm) * (k + 0.5 * xi_norm);
    return std::sqrt(cplx(a, b > 0.0 ? -k * b : 0.0)).imag();
}

double attenuated_Y_closed_form(double xi_norm, double k, double b) {
    const double xi2 = xi_norm * xi_norm;
    if (xi2 > 4.0 * k * k) {
        const double s = 0.5 * xi2 - 2.0 * k * k;
        return -0.5 * std::sqrt(s + std::sqrt(s * s + 4.0 * k * k * b * b));
    }
    const double a = k * k - 0.25 * xi2;
    const double denom = std::sqrt(2.0) * std::sqrt(a + std::sqrt(a * a + k * k * b * b));
    if (denom == 0.0) return 0.0;
    return -k * b / denom;
}

}  // namespace potrec
