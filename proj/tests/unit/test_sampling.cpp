#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "potrec/sampling.hpp"

using namespace potrec;

TEST(Sampling, DefaultPlanHas2214Points) {
    const SamplingPlan p = build_sampling(9, 1.0, 50.0, 0.2, 15.2);
    EXPECT_EQ(p.kappas().size(), 246u);
    EXPECT_EQ(p.size(), 2214u);
    EXPECT_NEAR(p.kappa_max(), 50.0, 1e-12);
    EXPECT_NEAR(p.d_theta(), 2.0 * kPi / 9.0, 1e-15);
    EXPECT_NEAR(p.m_max(), 50.0 / 15.2, 1e-12);
}

TEST(Sampling, DegeneratePlanIsOnePoint) {
    const SamplingPlan p = build_sampling(1, 1.0, 1.0, 0.2, 3.0);
    ASSERT_EQ(p.size(), 1u);
    const PhasePoint pt = p.point(0);
    EXPECT_EQ(pt.xi, (Vec2{1.0, 0.0}));
    EXPECT_DOUBLE_EQ(pt.weight, 1.0 * 0.2 * 2.0 * kPi / (4.0 * kPi * kPi));
}

TEST(Sampling, PointAtAnglePi) {
    // Two lines sit at 0 and pi; kappa = 1 + 46 * 0.2 = 10.2.
    const SamplingPlan p = build_sampling(2, 1.0, 50.0, 0.2, 15.2);
    const PhasePoint pt = p.point(46 * 2 + 1);
    EXPECT_NEAR(pt.kappa, 10.2, 1e-12);
    EXPECT_NEAR(pt.theta, kPi, 1e-15);
    EXPECT_NEAR(pt.xi.x, -10.2, 1e-12);
    EXPECT_NEAR(pt.xi.y, 0.0, 1e-12);
}

TEST(Sampling, Invariants) {
    const SamplingPlan p = build_sampling(9, 1.0, 50.0, 0.2, 15.2);
    double prev = 0.0;
    for (double k : p.kappas()) {
        EXPECT_GT(k, prev);
        prev = k;
    }
    for (const auto& pt : p.points()) {
        ASSERT_NEAR(dot(pt.direction, pt.companion), 0.0, 1e-14);
        ASSERT_NEAR(norm(pt.direction), 1.0, 1e-14);
        ASSERT_NEAR(norm(pt.companion), 1.0, 1e-14);
        ASSERT_GE(pt.weight, 0.0);
    }
}

TEST(Sampling, WeightsApproximateDiskArea) {
    const SamplingPlan p = build_sampling(9, 1.0, 50.0, 0.2, 15.2);
    for (double K : {15.2, 30.4, 45.6, 50.0}) {
        double sum = 0.0;
        for (const auto& pt : p.points()) {
            if (pt.kappa <= K + 1e-9) sum += pt.weight;
        }
        const double area = kPi * K * K / (4.0 * kPi * kPi);
        EXPECT_NEAR(sum / area, 1.0, 0.02) << K;
    }
}

TEST(Sampling, RestrictLines) {
    const SamplingPlan p = build_sampling(9, 1.0, 5.0, 0.2, 2.0);
    const std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
    const SamplingPlan same = restrict_lines(p, all);
    ASSERT_EQ(same.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(same.point(i).weight, p.point(i).weight);

    const std::vector<int> one{0};
    const SamplingPlan single = restrict_lines(p, one);
    EXPECT_EQ(single.size(), p.kappas().size());
    EXPECT_NEAR(single.point(3).weight, 9.0 * p.point(3 * 9).weight, 1e-15);

    EXPECT_THROW(restrict_lines(p, std::vector<int>{}), ConfigError);
    EXPECT_THROW(restrict_lines(p, std::vector<int>{9}), ConfigError);
    EXPECT_THROW(restrict_lines(p, std::vector<int>{1, 1}), ConfigError);
}

TEST(Sampling, SpreadLinesCoverDirectionsModuloPi) {
    EXPECT_EQ(spread_lines(9, 2), (std::vector<int>{0, 2}));
    EXPECT_EQ(spread_lines(9, 3), (std::vector<int>{0, 3, 6}));
    EXPECT_EQ(spread_lines(9, 7), (std::vector<int>{0, 2, 3, 4, 5, 6, 7}));
    EXPECT_EQ(spread_lines(9, 9).size(), 9u);
    EXPECT_THROW(spread_lines(9, 0), ConfigError);
    EXPECT_THROW(spread_lines(9, 10), ConfigError);
}

TEST(Hermitian, SingleEntryGainsConjugateMirror) {
    const WeightedMode m{{1.0, 2.0}, std::sqrt(5.0), 1.0, cplx(1.0, 2.0), 0, 0, false};
    const auto out = hermitian_complete(std::span<const WeightedMode>(&m, 1));
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[1].xi, (Vec2{-1.0, -2.0}));
    EXPECT_EQ(out[1].value, cplx(1.0, -2.0));
    EXPECT_TRUE(out[1].mirror);
    EXPECT_EQ(out[0].weight + out[1].weight, 1.0);
}

TEST(Hermitian, RealEvenInputIsUnchanged) {
    const std::vector<WeightedMode> in{{{3.0, 0.0}, 3.0, 0.5, cplx(2.0, 0.0), 0, 0, false},
                                       {{-3.0, 0.0}, 3.0, 0.5, cplx(2.0, 0.0), 0, 1, false}};
    const auto out = hermitian_complete(in);
    ASSERT_EQ(out.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(out[i].value, in[i].value);
        EXPECT_EQ(out[i].weight, in[i].weight);
    }
}

TEST(Hermitian, MirrorsAreAveragedAndCompletionIsIdempotent) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    const SamplingPlan p = build_sampling(9, 1.0, 6.0, 0.5, 3.0);
    std::vector<cplx> coef(p.size());
    for (auto& c : coef) c = {g(rng), g(rng)};
    const auto once = hermitian_complete(p, coef);
    const auto twice = hermitian_complete(once);
    ASSERT_EQ(once.size(), twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
        EXPECT_NEAR(std::abs(once[i].value - twice[i].value), 0.0, 1e-15);
        EXPECT_EQ(once[i].weight, twice[i].weight);
    }
    // Every xi has a conjugate partner with the same weight.
    for (const auto& m : once) {
        const auto it = std::find_if(once.begin(), once.end(), [&](const WeightedMode& o) {
            return std::abs(o.xi.x + m.xi.x) < 1e-9 && std::abs(o.xi.y + m.xi.y) < 1e-9;
        });
        ASSERT_NE(it, once.end());
        EXPECT_LT(std::abs(it->value - std::conj(m.value)), 1e-14);
        EXPECT_EQ(it->weight, m.weight);
    }
}

TEST(Hermitian, EvenLinePlansAreClosedAlready) {
    const SamplingPlan p = build_sampling(8, 1.0, 3.0, 1.0, 1.0);
    std::vector<cplx> coef(p.size(), cplx(1.0, 0.0));
    const auto out = hermitian_complete(p, coef);
    EXPECT_EQ(out.size(), p.size());
}
