#include "potrec/potential.hpp"

#include <algorithm>
#include <cmath>

namespace potrec {

double GaussianMixture::operator()(Vec2 x) const {
    double s = 0.0;
    for (const auto& g : bumps) {
        const Vec2 d = x - g.center;
        s += g.amplitude * std::exp(-dot(d, d) / (g.width * g.width));
    }
    return s;
}

GaussianMixture case1_potential() {
    return {{{1.0, {-0.25, 0.2}, 0.15}, {-1.0, {0.25, -0.2}, 0.15}}};
}

GaussianMixture case2_potential() {
    return {{{1.0, {-0.3, 0.25}, 0.12},
             {-0.8, {0.25, 0.3}, 0.1},
             {0.7, {0.2, -0.3}, 0.14},
             {-0.6, {-0.25, -0.25}, 0.09}}};
}

PotentialField::PotentialField(const Grid& grid, std::vector<double> node_values, double m1)
    : grid_(&grid), values_(std::move(node_values)), m1_(m1) {
    const auto n = static_cast<std::size_t>(grid.n_per_side());
    if (values_.size() != n * n) {
        throw ConfigError("potential field size does not match grid");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw DomainError("potential field has non-finite values");
    }
}

PotentialField PotentialField::zero(const Grid& grid) {
    const auto n = static_cast<std::size_t>(grid.n_per_side());
    return {grid, std::vector<double>(n * n, 0.0)};
}

PotentialField PotentialField::constant(const Grid& grid, double value) {
    auto f = zero(grid);
    for (const auto& [i, j] : grid.interior_nodes()) {
        f.values_[static_cast<std::size_t>(j) * grid.n_per_side() + i] = value;
    }
    return f;
}

PotentialField PotentialField::sample(const Grid& grid, const GaussianMixture& c, double m1) {
    auto f = zero(grid);
    for (const auto& [i, j] : grid.interior_nodes()) {
        f.values_[static_cast<std::size_t>(j) * grid.n_per_side() + i] = c(grid.node(i, j));
    }
    f.m1_ = m1;
    return f;
}

double PotentialField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void PotentialField::check_bound(double c_max) const {
    if (max_abs() > c_max) {
        throw DomainError("potential exceeds the configured bound c_max = " + std::to_string(c_max));
    }
}

PotentialField PotentialField::scaled(double s) const {
    auto v = values_;
    for (double& x : v) x *= s;
    return {*grid_, std::move(v), m1_ * std::abs(s)};
}

cplx fourier_transform_midpoint(const PotentialField& c, Vec2 xi) {
    const Grid& g = c.grid();
    cplx sum = 0.0;
    for (const auto& [i, j] : g.interior_nodes()) {
        const double v = c.at(i, j);
        if (v == 0.0) continue;
        const double phase = dot(xi, g.node(i, j));
        sum += v * cplx(std::cos(phase), std::sin(phase));
    }
    return sum * (g.spacing() * g.spacing());
}

}  // namespace potrec
