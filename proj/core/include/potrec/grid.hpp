#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "potrec/common.hpp"

namespace potrec {

/// Lattice index pair (i along x, j along y).
struct NodeIndex {
    int i = 0;
    int j = 0;
};

/// Neighbor directions in the order used by CutCell::fraction.
enum class Direction : int { East = 0, West = 1, North = 2, South = 3 };

/// Distance from an interior node to its neighbor along each axis direction,
/// in units of the spacing. 1 means the neighbor is an interior node; a value
/// in (0, 1] on a cut direction locates the crossing with the circle.
struct CutCell {
    std::array<double, 4> fraction{1.0, 1.0, 1.0, 1.0};
    std::array<bool, 4> cut{false, false, false, false};

    [[nodiscard]] bool any_cut() const { return cut[0] || cut[1] || cut[2] || cut[3]; }
};

/// Square node lattice on [-half_width, half_width]^2 with an embedded disk
/// of the given radius centred at the origin. Immutable once built.
class Grid {
public:
    static Grid build(int n_per_side, double half_width, double radius);

    [[nodiscard]] int n_per_side() const { return n_; }
    [[nodiscard]] double half_width() const { return half_width_; }
    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] double spacing() const { return h_; }
    /// Domain diameter 2 sup|x| of the disk.
    [[nodiscard]] double diameter() const { return 2.0 * radius_; }

    [[nodiscard]] Vec2 node(int i, int j) const {
        return {-half_width_ + i * h_, -half_width_ + j * h_};
    }
    [[nodiscard]] bool in_lattice(int i, int j) const { return i >= 0 && j >= 0 && i < n_ && j < n_; }
    [[nodiscard]] bool interior(int i, int j) const { return unknown(i, j) >= 0; }

    /// Unknown number of a lattice node, or -1 when it is outside the disk or the lattice.
    [[nodiscard]] int unknown(int i, int j) const {
        return in_lattice(i, j) ? unknown_of_node_[static_cast<std::size_t>(j) * n_ + i] : -1;
    }

    [[nodiscard]] std::size_t interior_count() const { return interior_.size(); }
    [[nodiscard]] std::span<const NodeIndex> interior_nodes() const { return interior_; }
    [[nodiscard]] const CutCell& cut_cell(std::size_t unknown) const { return cut_[unknown]; }
    [[nodiscard]] Vec2 interior_point(std::size_t unknown) const {
        return node(interior_[unknown].i, interior_[unknown].j);
    }

    [[nodiscard]] bool same_layout(const Grid& o) const {
        return n_ == o.n_ && half_width_ == o.half_width_ && radius_ == o.radius_;
    }

private:
    Grid() = default;

    int n_ = 0;
    double half_width_ = 0.0;
    double radius_ = 0.0;
    double h_ = 0.0;
    std::vector<int> unknown_of_node_;
    std::vector<NodeIndex> interior_;
    std::vector<CutCell> cut_;
};

/// Equiangular samples of the circle with exact outward normals and
/// uniform arc-length weights.
struct BoundaryDiscretization {
    double radius = 0.0;
    std::vector<double> angles;
    std::vector<Vec2> points;
    std::vector<Vec2> normals;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const { return points.size(); }
};

BoundaryDiscretization boundary_nodes(const Grid& grid, int n_boundary);
BoundaryDiscretization boundary_nodes(double radius, int n_boundary);

}  // namespace potrec
