#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "potrec/bounds.hpp"
#include "potrec/measurement.hpp"
#include "potrec/potential.hpp"

namespace potrec {

struct DomainConfig {
    double half_width = 1.0;
    double radius = 0.7;
    int n_forward = 100;
    int n_inversion = 90;
    int n_boundary = 256;
};

struct PlanConfig {
    int n_lines = 9;
    double kappa_min = 1.0;
    double kappa_max = 50.0;
    double d_kappa = 0.2;
    /// Explicit line ids to keep; empty keeps every line unless line_count is set.
    std::vector<int> lines;
    /// Keep this many evenly spread lines (0 = all).
    int line_count = 0;
};

struct PhysicsConfig {
    std::vector<double> k_list{15.2};
    double b = 0.0;
    std::vector<double> m_list{1.0, 2.0, 3.0};
    /// Attenuation values for the attenuation study.
    std::vector<double> b_list{0.5, 1.0, 2.0};
};

struct PotentialConfig {
    /// case1, case2 or custom.
    std::string preset = "case1";
    GaussianMixture custom;
    /// Reject potentials with max |c| above this (0 disables the check).
    double c_max = 0.0;
    double m1 = 1.0;
};

struct MeasurementConfig {
    Provenance mode = Provenance::FullNonlinear;
    NeumannReference reference = NeumannReference::Discrete;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

struct ForwardConfig {
    double kappa = 8.4;
    Vec2 direction{-0.17, 0.98};
};

struct BoundsConfig {
    StabilityParams params;
    double k_min = 1.05;
    double k_max = 50.0;
    int samples = 200;
};

struct ExperimentConfig {
    DomainConfig domain;
    PlanConfig plan;
    PhysicsConfig physics;
    PotentialConfig potential;
    MeasurementConfig measurement;
    ForwardConfig forward;
    BoundsConfig bounds;
    std::filesystem::path output_dir = "out";
    bool heatmaps = true;
    int workers = 0;

    /// The ground-truth mixture selected by the potential section.
    [[nodiscard]] GaussianMixture mixture() const;
    /// Canonical key = value rendering; equal configs render identically.
    [[nodiscard]] std::string canonical() const;
};

/// Parses the INI-style text. Unknown sections or keys are rejected.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& data);

}  // namespace potrec
