#include "potrec/grid.hpp"

#include <cmath>
#include <string>

namespace potrec {

namespace {

// Distance along +/- axis from p to the circle |x| = r, assuming |p| < r.
double crossing(double along, double across, double r, double sign) {
    const double half_chord = std::sqrt(r * r - across * across);
    return sign > 0 ? half_chord - along : half_chord + along;
}

}  // namespace

Grid Grid::build(int n_per_side, double half_width, double radius) {
    if (n_per_side < 16) {
        throw ConfigError("n_per_side must be at least 16, got " + std::to_string(n_per_side));
    }
    if (!(radius > 0.0)) {
        throw DomainError("radius must be positive");
    }
    if (radius >= half_width) {
        throw DomainError("radius " + std::to_string(radius) + " must be smaller than half_width " +
                          std::to_string(half_width));
    }

    Grid g;
    g.n_ = n_per_side;
    g.half_width_ = half_width;
    g.radius_ = radius;
    g.h_ = 2.0 * half_width / (n_per_side - 1);
    g.unknown_of_node_.assign(static_cast<std::size_t>(n_per_side) * n_per_side, -1);

    const double r2 = radius * radius;
    for (int j = 0; j < n_per_side; ++j) {
        for (int i = 0; i < n_per_side; ++i) {
            const Vec2 p = g.node(i, j);
            if (dot(p, p) < r2) {
                g.unknown_of_node_[static_cast<std::size_t>(j) * n_per_side + i] =
                    static_cast<int>(g.interior_.size());
                g.interior_.push_back({i, j});
            }
        }
    }
    if (g.interior_.empty()) {
        throw ConfigError("grid has no interior nodes");
    }

    constexpr std::array<int, 4> di{1, -1, 0, 0};
    constexpr std::array<int, 4> dj{0, 0, 1, -1};
    g.cut_.resize(g.interior_.size());
    for (std::size_t u = 0; u < g.interior_.size(); ++u) {
        const auto [i, j] = g.interior_[u];
        const Vec2 p = g.node(i, j);
        CutCell& cell = g.cut_[u];
        for (int d = 0; d < 4; ++d) {
            if (g.interior(i + di[d], j + dj[d])) continue;
            const double dist = d < 2 ? crossing(p.x, p.y, radius, di[d]) : crossing(p.y, p.x, radius, dj[d]);
            double frac = dist / g.h_;
            // The neighbor lies on or beyond the circle, so the crossing is at most one spacing away.
            if (frac > 1.0) frac = 1.0;
            cell.fraction[d] = frac;
            cell.cut[d] = true;
        }
    }
    return g;
}

BoundaryDiscretization boundary_nodes(double radius, int n_boundary) {
    if (n_boundary < 8) {
        throw ConfigError("n_boundary must be at least 8, got " + std::to_string(n_boundary));
    }
    BoundaryDiscretization b;
    b.radius = radius;
    const auto n = static_cast<std::size_t>(n_boundary);
    b.angles.resize(n);
    b.points.resize(n);
    b.normals.resize(n);
    b.weights.assign(n, 2.0 * kPi * radius / n_boundary);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = 2.0 * kPi * static_cast<double>(j) / n_boundary;
        b.angles[j] = theta;
        b.normals[j] = {std::cos(theta), std::sin(theta)};
        b.points[j] = b.normals[j] * radius;
    }
    return b;
}

BoundaryDiscretization boundary_nodes(const Grid& grid, int n_boundary) {
    return boundary_nodes(grid.radius(), n_boundary);
}

}  // namespace potrec
