#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "potrec/reconstruction.hpp"

using namespace potrec;

namespace {

// Table filled from a callback instead of measurements.
CoefficientTable table_from(const SamplingPlan& plan, double limit, const std::function<cplx(Vec2)>& f) {
    CoefficientTable t;
    t.k = plan.k();
    t.total_lines = plan.total_lines();
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const PhasePoint p = plan.point(i);
        if (p.kappa > limit + 1e-9) break;
        t.entries.push_back({p, f(p.xi), std::nullopt});
        t.kappa_limit = p.kappa;
    }
    return t;
}

}  // namespace

TEST(Coefficient, ZeroTraceGivesZero) {
    const BoundaryDiscretization b = boundary_nodes(0.7, 64);
    MeasurementRecord r;
    r.pair = make_wave_pair({1.0, 0.0}, 15.2);
    r.g1_prime = {&b, std::vector<cplx>(b.size())};
    EXPECT_EQ(fourier_coefficient(r, b), cplx(0.0, 0.0));
}

TEST(Coefficient, ConstantPotentialMatchesDiskBessel) {
    const Grid g = Grid::build(200, 1.0, 0.7);
    const BoundaryDiscretization b = boundary_nodes(g, 256);
    const PotentialField c = PotentialField::constant(g, 1.0);
    const auto rec = synthesize_measurement(g, c, make_wave_pair({1.0, 0.0}, 15.2), b, Provenance::DirectLinearized, 0.0);
    const double ref = oracle::disk_indicator_transform(1.0, 0.7);
    EXPECT_LT(std::abs(fourier_coefficient(rec, b) - ref), 0.05 * ref);
}

TEST(Synthesis, SingleHermitianPairIsACosine) {
    const SamplingPlan plan = build_sampling(2, 3.0, 3.0, 0.5, 2.0);
    const CoefficientTable t = table_from(plan, 3.0, [](Vec2) { return cplx(1.0, 0.0); });
    const Grid g = Grid::build(40, 1.0, 0.7);
    const PotentialField c = synthesize(t, plan, 3.0, g);
    const double sigma = plan.point(0).weight;
    for (std::size_t u = 0; u < g.interior_count(); ++u) {
        const Vec2 x = g.interior_point(u);
        ASSERT_NEAR(c.at_unknown(u), 2.0 * sigma * std::cos(3.0 * x.x), 1e-14);
    }
}

TEST(Synthesis, OracleCoefficientsOfAGaussianRecoverIt) {
    const double k = 20.0;
    const SamplingPlan plan = build_sampling(9, 1.0, 50.0, 0.2, k);
    const CoefficientTable t = table_from(plan, 2.0 * k, [](Vec2 xi) {
        return oracle::disk_fourier(oracle::peak_valley, xi.x, xi.y, 0.7, 8, 128);
    });
    const Grid g = Grid::build(90, 1.0, 0.7);
    const auto r = reconstruct(t, plan, 2.0 * k, g, nullptr);
    const PotentialField truth = PotentialField::sample(g, case1_potential());
    EXPECT_LE(error_metrics(r.c_inv, truth).relative_l2, 0.15);
    EXPECT_LE(r.imaginary_residue, 1e-12);
}

TEST(Synthesis, TraversalOrderDoesNotMatter) {
    const SamplingPlan plan = build_sampling(9, 1.0, 10.0, 0.5, 5.0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    const CoefficientTable t = table_from(plan, 10.0, [&](Vec2) { return cplx(n(rng), n(rng)); });
    auto modes = truncated_modes(t, plan, 10.0);
    const Grid g = Grid::build(40, 1.0, 0.7);
    const auto a = synthesize_modes(modes, g, 1);
    std::shuffle(modes.begin(), modes.end(), rng);
    const auto b = synthesize_modes(modes, g, 3);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max(scale, std::abs(a[i]));
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    EXPECT_LE(diff, 1e-12 * scale);
}

TEST(Synthesis, CoverageError) {
    const SamplingPlan plan = build_sampling(9, 1.0, 20.0, 0.2, 5.0);
    const CoefficientTable t = table_from(plan, 10.0, [](Vec2) { return cplx(1.0, 0.0); });
    const Grid g = Grid::build(30, 1.0, 0.7);
    EXPECT_NO_THROW(synthesize(t, plan, 10.0, g));
    EXPECT_THROW(synthesize(t, plan, 15.0, g), CoverageError);
    EXPECT_THROW(synthesize(t, plan, 25.0, g), CoverageError);
    EXPECT_THROW(synthesize(t, plan, 0.0, g), ConfigError);
}

TEST(ErrorMetrics, Identities) {
    const Grid g = Grid::build(50, 1.0, 0.7);
    const PotentialField truth = PotentialField::sample(g, case1_potential());
    const auto same = error_metrics(truth, truth);
    EXPECT_EQ(same.relative_l2, 0.0);
    EXPECT_EQ(same.relative_linf, 0.0);
    const auto zero = error_metrics(PotentialField::zero(g), truth);
    EXPECT_DOUBLE_EQ(zero.relative_l2, 1.0);
    EXPECT_DOUBLE_EQ(zero.relative_linf, 1.0);
    const auto scaled = error_metrics(truth.scaled(1.1), truth);
    EXPECT_NEAR(scaled.relative_l2, 0.1, 1e-12);
    EXPECT_NEAR(scaled.relative_linf, 0.1, 1e-12);
    const Grid other = Grid::build(51, 1.0, 0.7);
    EXPECT_THROW(error_metrics(PotentialField::zero(other), truth), ConfigError);
}

TEST(Pipeline, ZeroPotentialReconstructsZero) {
    const Grid fwd = Grid::build(60, 1.0, 0.7);
    const Grid inv = Grid::build(40, 1.0, 0.7);
    const BoundaryDiscretization b = boundary_nodes(fwd, 64);
    const PotentialField c = PotentialField::zero(fwd);
    const MeasurementSynthesizer s(fwd, c, b, 4.0, 0.0);
    const SamplingPlan plan = build_sampling(9, 1.0, 12.0, 0.5, 4.0);
    const auto r = run_algorithm1(s, plan, 2.0, inv);
    EXPECT_LT(r.c_inv.max_abs(), 1e-8);
}

TEST(Pipeline, AcquisitionIsIndependentOfWorkerCount) {
    const Grid fwd = Grid::build(50, 1.0, 0.7);
    const BoundaryDiscretization b = boundary_nodes(fwd, 64);
    const PotentialField c = PotentialField::sample(fwd, case1_potential());
    MeasurementOptions opt;
    opt.noise_level = 0.01;
    opt.seed = 9;
    const MeasurementSynthesizer s(fwd, c, b, 4.0, 0.0, opt);
    const SamplingPlan plan = build_sampling(9, 1.0, 8.0, 0.5, 4.0);
    AcquireOptions a1{8.0, 1, true}, a3{8.0, 3, true};
    const auto t1 = acquire_coefficients(s, plan, a1);
    const auto t3 = acquire_coefficients(s, plan, a3);
    ASSERT_EQ(t1.entries.size(), plan.size());
    for (std::size_t i = 0; i < t1.entries.size(); ++i) {
        EXPECT_EQ(t1.entries[i].value, t3.entries[i].value);
        EXPECT_EQ(t1.entries[i].point.length, static_cast<int>(i / 9));
    }
    const SamplingPlan sub = restrict_lines(plan, spread_lines(9, 3));
    EXPECT_NO_THROW(reconstruct(t1, sub, 8.0, fwd));
    EXPECT_THROW(acquire_coefficients(s, sub, a1), ConfigError);
}
