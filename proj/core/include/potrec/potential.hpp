#pragma once

#include <string>
#include <vector>

#include "potrec/common.hpp"
#include "potrec/grid.hpp"

namespace potrec {

struct GaussianBump {
    double amplitude = 1.0;
    Vec2 center;
    double width = 0.15;
};

/// Sum of isotropic Gaussians A exp(-|x - p|^2 / s^2), restricted to the disk.
struct GaussianMixture {
    std::vector<GaussianBump> bumps;

    [[nodiscard]] double operator()(Vec2 x) const;
};

/// One peak and one valley.
GaussianMixture case1_potential();
/// Four bumps of mixed sign.
GaussianMixture case2_potential();

/// Real potential sampled on every lattice node, zero outside the disk.
class PotentialField {
public:
    PotentialField(const Grid& grid, std::vector<double> node_values, double m1 = 0.0);

    static PotentialField zero(const Grid& grid);
    static PotentialField sample(const Grid& grid, const GaussianMixture& c, double m1 = 0.0);
    static PotentialField constant(const Grid& grid, double value);

    [[nodiscard]] const Grid& grid() const { return *grid_; }
    [[nodiscard]] double at(int i, int j) const {
        return values_[static_cast<std::size_t>(j) * grid_->n_per_side() + i];
    }
    /// Value at an interior unknown.
    [[nodiscard]] double at_unknown(std::size_t u) const {
        const auto [i, j] = grid_->interior_nodes()[u];
        return at(i, j);
    }
    [[nodiscard]] const std::vector<double>& node_values() const { return values_; }
    [[nodiscard]] double max_abs() const;
    /// A priori H1 bound carried as metadata.
    [[nodiscard]] double m1() const { return m1_; }

    /// Throws DomainError when max|c| exceeds c_max.
    void check_bound(double c_max) const;

    [[nodiscard]] PotentialField scaled(double s) const;

private:
    const Grid* grid_;
    std::vector<double> values_;
    double m1_;
};

/// Midpoint-rule Fourier transform F[c](xi) = sum c(x) exp(i xi.x) h^2 over interior nodes.
cplx fourier_transform_midpoint(const PotentialField& c, Vec2 xi);

}  // namespace potrec
