#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "potrec/potential.hpp"

using namespace potrec;

TEST(Potential, PeakAndValleyPreset) {
    const GaussianMixture c = case1_potential();
    ASSERT_EQ(c.bumps.size(), 2u);
    EXPECT_NEAR(c({-0.25, 0.2}), 1.0, 1e-3);
    EXPECT_NEAR(c({0.25, -0.2}), -1.0, 1e-3);
    EXPECT_NEAR(c({0.0, 0.0}), 0.0, 1e-14);
    EXPECT_DOUBLE_EQ(c({0.1, 0.3}), oracle::peak_valley(0.1, 0.3));
}

TEST(Potential, FieldIsZeroOutsideTheDisk) {
    const Grid g = Grid::build(60, 1.0, 0.7);
    const PotentialField f = PotentialField::constant(g, 2.0);
    for (int j = 0; j < g.n_per_side(); ++j) {
        for (int i = 0; i < g.n_per_side(); ++i) EXPECT_EQ(f.at(i, j), g.interior(i, j) ? 2.0 : 0.0);
    }
    EXPECT_EQ(f.max_abs(), 2.0);
    EXPECT_EQ(f.scaled(-0.5).max_abs(), 1.0);
}

TEST(Potential, Validation) {
    const Grid g = Grid::build(30, 1.0, 0.7);
    EXPECT_THROW(PotentialField(g, std::vector<double>(10, 0.0)), ConfigError);
    std::vector<double> v(30 * 30, 0.0);
    v[15 * 30 + 15] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_ANY_THROW(PotentialField(g, v));
    const PotentialField f = PotentialField::constant(g, 3.0);
    EXPECT_THROW(f.check_bound(2.0), DomainError);
    EXPECT_NO_THROW(f.check_bound(3.0));
}

TEST(Potential, MidpointTransformApproachesQuadratureOracle) {
    const Grid g = Grid::build(200, 1.0, 0.7);
    const PotentialField f = PotentialField::sample(g, case1_potential());
    for (Vec2 xi : {Vec2{1.0, 0.0}, Vec2{-6.0, 4.0}, Vec2{12.0, 20.0}}) {
        const cplx ref = oracle::disk_fourier(oracle::peak_valley, xi.x, xi.y, 0.7);
        const cplx mid = fourier_transform_midpoint(f, xi);
        EXPECT_LT(std::abs(mid - ref), 0.02 * std::abs(ref) + 1e-4) << xi.x << "," << xi.y;
    }
}

TEST(Potential, ConstantTransformIsTheDiskBessel) {
    const Grid g = Grid::build(200, 1.0, 0.7);
    const cplx f = fourier_transform_midpoint(PotentialField::constant(g, 1.0), {1.0, 0.0});
    EXPECT_NEAR(oracle::disk_indicator_transform(1.0, 0.7), 1.4470, 1e-4);
    EXPECT_NEAR(f.real(), oracle::disk_indicator_transform(1.0, 0.7), 0.01);
}
