#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "potrec/grid.hpp"

using namespace potrec;

TEST(Grid, SpacingAndNodes) {
    const Grid g = Grid::build(100, 1.0, 0.7);
    EXPECT_DOUBLE_EQ(g.spacing(), 2.0 / 99.0);
    EXPECT_DOUBLE_EQ(g.node(0, 0).x, -1.0);
    EXPECT_NEAR(g.node(99, 99).y, 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(g.diameter(), 1.4);
}

TEST(Grid, InteriorNodesAreStrictlyInsideAndCountMatchesArea) {
    const Grid g = Grid::build(200, 1.0, 0.7);
    for (std::size_t u = 0; u < g.interior_count(); ++u) {
        const Vec2 p = g.interior_point(u);
        ASSERT_LT(p.x * p.x + p.y * p.y, 0.49);
        const auto [i, j] = g.interior_nodes()[u];
        ASSERT_EQ(g.unknown(i, j), static_cast<int>(u));
    }
    const double expected = kPi * 0.49 / (g.spacing() * g.spacing());
    EXPECT_NEAR(static_cast<double>(g.interior_count()) / expected, 1.0, 0.01);
}

TEST(Grid, CutFractionsLocateTheCircle) {
    const Grid g = Grid::build(64, 1.0, 0.7);
    const double h = g.spacing();
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    int cuts = 0;
    for (std::size_t u = 0; u < g.interior_count(); ++u) {
        const auto [i, j] = g.interior_nodes()[u];
        const CutCell& c = g.cut_cell(u);
        for (int d = 0; d < 4; ++d) {
            if (!c.cut[d]) {
                EXPECT_EQ(c.fraction[d], 1.0);
                EXPECT_TRUE(g.interior(i + di[d], j + dj[d]));
                continue;
            }
            ++cuts;
            EXPECT_FALSE(g.interior(i + di[d], j + dj[d]));
            ASSERT_GT(c.fraction[d], 0.0);
            ASSERT_LE(c.fraction[d], 1.0);
            const Vec2 p = g.node(i, j);
            const Vec2 q{p.x + di[d] * c.fraction[d] * h, p.y + dj[d] * c.fraction[d] * h};
            EXPECT_NEAR(norm(q), 0.7, 1e-12);
        }
    }
    EXPECT_GT(cuts, 0);
}

TEST(Grid, RejectsBadGeometry) {
    EXPECT_THROW(Grid::build(8, 1.0, 0.7), ConfigError);
    EXPECT_THROW(Grid::build(100, 1.0, 1.0), DomainError);
    EXPECT_THROW(Grid::build(100, 1.0, -0.1), DomainError);
}

TEST(Grid, SameLayout) {
    const Grid a = Grid::build(50, 1.0, 0.7);
    const Grid b = Grid::build(50, 1.0, 0.7);
    const Grid c = Grid::build(51, 1.0, 0.7);
    EXPECT_TRUE(a.same_layout(b));
    EXPECT_FALSE(a.same_layout(c));
}

TEST(Boundary, EquiangularWithUnitNormals) {
    const BoundaryDiscretization b = boundary_nodes(0.7, 256);
    ASSERT_EQ(b.size(), 256u);
    const double total = std::accumulate(b.weights.begin(), b.weights.end(), 0.0);
    EXPECT_NEAR(total, 2.0 * kPi * 0.7, 1e-12);
    for (std::size_t j = 0; j < b.size(); ++j) {
        EXPECT_NEAR(norm(b.normals[j]), 1.0, 1e-14);
        EXPECT_NEAR(norm(b.points[j]), 0.7, 1e-14);
        EXPECT_NEAR(dot(b.normals[j], b.points[j]), 0.7, 1e-14);
    }
    EXPECT_THROW(boundary_nodes(0.7, 4), ConfigError);
}
