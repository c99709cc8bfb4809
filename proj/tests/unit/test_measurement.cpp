#include <gtest/gtest.h>

#include "potrec/measurement.hpp"

using namespace potrec;

namespace {

double rel_diff(const BoundaryTrace& a, const BoundaryTrace& b) {
    BoundaryTrace d = a;
    for (std::size_t j = 0; j < a.size(); ++j) d.values[j] -= b.values[j];
    return d.l2_norm() / b.l2_norm();
}

}  // namespace

TEST(Measurement, ZeroPotentialGivesZeroData) {
    const Grid g = Grid::build(60, 1.0, 0.7);
    const BoundaryDiscretization b = boundary_nodes(g, 64);
    const PotentialField c = PotentialField::zero(g);
    const WaveVectorPair pair = make_wave_pair({3.0, 1.0}, 5.0);
    for (Provenance mode : {Provenance::FullNonlinear, Provenance::DirectLinearized}) {
        const MeasurementRecord r = synthesize_measurement(g, c, pair, b, mode, 0.0);
        for (const cplx& v : r.g1_prime.values) EXPECT_LT(std::abs(v), 1e-10);
    }
}

TEST(Measurement, FullModeApproachesLinearizedForSmallPotentials) {
    const Grid g = Grid::build(100, 1.0, 0.7);
    const BoundaryDiscretization b = boundary_nodes(g, 128);
    const PotentialField c = PotentialField::sample(g, case1_potential()).scaled(0.05);
    const WaveVectorPair pair = make_wave_pair({-0.17 * 8.4, 0.98 * 8.4}, 8.0);
    const auto full = synthesize_measurement(g, c, pair, b, Provenance::FullNonlinear, 0.0);
    const auto lin = synthesize_measurement(g, c, pair, b, Provenance::DirectLinearized, 0.0);
    EXPECT_LT(rel_diff(full.g1_prime, lin.g1_prime), 0.02);
}

TEST(Measurement, NoiseHasRequestedLevelAndIsReproducible) {
    const BoundaryDiscretization b = boundary_nodes(0.7, 256);
    BoundaryTrace t{&b, std::vector<cplx>(b.size(), cplx(1.0, -2.0))};
    const BoundaryTrace clean = t;
    BoundaryTrace t2 = t, t3 = t;
    add_relative_noise(t, 0.05, 42, 3);
    add_relative_noise(t2, 0.05, 42, 3);
    add_relative_noise(t3, 0.05, 42, 4);
    EXPECT_NEAR(rel_diff(t, clean), 0.05, 1e-12);
    EXPECT_EQ(t.values, t2.values);
    EXPECT_NE(t.values, t3.values);
    EXPECT_THROW(add_relative_noise(t, -0.1, 0, 0), ConfigError);
}

TEST(Measurement, SynthesizerChecksPairAndGrid) {
    const Grid g = Grid::build(40, 1.0, 0.7);
    const Grid other = Grid::build(42, 1.0, 0.7);
    const BoundaryDiscretization b = boundary_nodes(g, 32);
    const PotentialField c = PotentialField::zero(g);
    const MeasurementSynthesizer s(g, c, b, 4.0, 0.0);
    EXPECT_THROW((void)s.measure(make_wave_pair({1.0, 0.0}, 5.0)), ConfigError);
    const PotentialField wrong = PotentialField::zero(other);
    EXPECT_THROW(MeasurementSynthesizer(g, wrong, b, 4.0, 0.0), ConfigError);
    MeasurementOptions bad;
    bad.noise_level = -1.0;
    EXPECT_THROW(MeasurementSynthesizer(g, c, b, 4.0, 0.0, bad), ConfigError);
}

TEST(Measurement, ModeNamesRoundTrip) {
    EXPECT_EQ(parse_provenance("full"), Provenance::FullNonlinear);
    EXPECT_EQ(parse_provenance(to_string(Provenance::DirectLinearized)), Provenance::DirectLinearized);
    EXPECT_EQ(parse_reference("analytic"), NeumannReference::Analytic);
    EXPECT_THROW(parse_provenance("exact"), ConfigError);
}

TEST(Measurement, OperatorNormProxy) {
    const Grid g = Grid::build(60, 1.0, 0.7);
    const BoundaryDiscretization b = boundary_nodes(g, 64);
    const PotentialField c = PotentialField::sample(g, case1_potential());
    MeasurementOptions lin;
    lin.mode = Provenance::DirectLinearized;
    const MeasurementSynthesizer s(g, c, b, 5.0, 0.0, lin);
    std::vector<MeasurementRecord> recs{s.measure(make_wave_pair({2.0, 0.0}, 5.0)),
                                        s.measure(make_wave_pair({0.0, 6.0}, 5.0))};
    const double eps = dtn_norm_estimate(recs);
    EXPECT_GT(eps, 0.0);
    const PotentialField c2 = c.scaled(2.0);
    const MeasurementSynthesizer s2(g, c2, b, 5.0, 0.0, lin);
    std::vector<MeasurementRecord> recs2{s2.measure(make_wave_pair({2.0, 0.0}, 5.0)),
                                         s2.measure(make_wave_pair({0.0, 6.0}, 5.0))};
    EXPECT_NEAR(dtn_norm_estimate(recs2), 2.0 * eps, 1e-9 * eps);
    EXPECT_THROW(dtn_norm_estimate(std::span<const MeasurementRecord>{}), ConfigError);
}
