#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "potrec/config.hpp"

using namespace potrec;

TEST(Config, EmptyTextGivesDefaults) {
    const ExperimentConfig c = parse_config("");
    EXPECT_EQ(c.domain.n_forward, 100);
    EXPECT_EQ(c.domain.n_inversion, 90);
    EXPECT_DOUBLE_EQ(c.domain.radius, 0.7);
    EXPECT_EQ(c.plan.n_lines, 9);
    EXPECT_DOUBLE_EQ(c.plan.d_kappa, 0.2);
    EXPECT_EQ(c.physics.k_list, std::vector<double>{15.2});
    EXPECT_EQ(c.physics.m_list, (std::vector<double>{1.0, 2.0, 3.0}));
    EXPECT_EQ(c.measurement.mode, Provenance::FullNonlinear);
    EXPECT_EQ(c.potential.preset, "case1");
    EXPECT_EQ(c.canonical(), ExperimentConfig{}.canonical());
}

TEST(Config, ParsesEverySection) {
    const ExperimentConfig c = parse_config(R"(
; comment
[domain]
n_forward = 64
radius = 0.6
[plan]
n_lines = 7
lines = 0, 3
[physics]
k = 5, 20
m = 2
b = 0.25
[potential]
preset = custom
gaussians = 1 0 0 0.1; -0.5 0.2 0.1 0.05
[measurement]
mode = linearized
noise = 0.01
seed = 11
[forward]
direction = 1, 0
[bounds]
eps = 0.01
M1 = 2
[output]
dir = results/x
heatmaps = false
[run]
workers = 2
)");
    EXPECT_EQ(c.domain.n_forward, 64);
    EXPECT_DOUBLE_EQ(c.domain.radius, 0.6);
    EXPECT_EQ(c.plan.lines, (std::vector<int>{0, 3}));
    EXPECT_EQ(c.physics.k_list, (std::vector<double>{5.0, 20.0}));
    EXPECT_DOUBLE_EQ(c.physics.b, 0.25);
    ASSERT_EQ(c.mixture().bumps.size(), 2u);
    EXPECT_DOUBLE_EQ(c.mixture().bumps[1].amplitude, -0.5);
    EXPECT_EQ(c.measurement.mode, Provenance::DirectLinearized);
    EXPECT_EQ(c.measurement.seed, 11u);
    EXPECT_DOUBLE_EQ(c.bounds.params.eps, 0.01);
    EXPECT_EQ(c.output_dir, std::filesystem::path("results/x"));
    EXPECT_FALSE(c.heatmaps);
    EXPECT_EQ(c.workers, 2);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse_config("[nope]\na = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("[domain]\nwidth = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("[domain]\nn_forward = lots\n"), ConfigError);
    EXPECT_THROW(parse_config("[physics]\nm =\n"), ConfigError);
    EXPECT_THROW(parse_config("[physics]\nk = -3\n"), DomainError);
    EXPECT_THROW(parse_config("[domain]\nradius = 1.5\n"), DomainError);
    EXPECT_THROW(parse_config("[plan]\nlines = 0\nline_count = 2\n"), ConfigError);
    EXPECT_THROW(parse_config("[potential]\npreset = custom\n"), ConfigError);
    EXPECT_THROW(parse_config("[measurement]\nmode = exact\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/potrec.ini"), ConfigError);
}

TEST(Config, HashFollowsContentNotLayout) {
    const auto a = parse_config("[physics]\nk = 5\n");
    const auto b = parse_config("\n[physics]\n  k=5.0  \n[run]\nworkers = 4\n");
    const auto c = parse_config("[physics]\nk = 5.0000001\n");
    EXPECT_EQ(fnv1a(a.canonical()), fnv1a(b.canonical()));
    EXPECT_NE(fnv1a(a.canonical()), fnv1a(c.canonical()));
    EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Config, LoadsFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "potrec_test_config.ini";
    std::ofstream(path) << "[physics]\nk = 7\n";
    EXPECT_EQ(load_config(path).physics.k_list, std::vector<double>{7.0});
    std::filesystem::remove(path);
}
