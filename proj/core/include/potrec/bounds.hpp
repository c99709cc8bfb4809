#pragma once

#include <string>

namespace potrec {

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Inputs of the stability estimates. Defaults describe a disk of radius 1/2
/// (diameter D = 1) in the plane with C(Omega) = 1.
struct StabilityParams {
    int n = 2;
    double eps = 1e-3;
    double M1 = 1.0;
    double D = 1.0;
    double C_omega = 1.0;
    double b = 0.0;
    double vol_n = 0.7853981633974483;  // pi / 4
    double vol_nm1 = 1.0;               // widest chord
    double sigma_n = 3.141592653589793;

    /// E = -ln eps.
    [[nodiscard]] double E() const;
    /// C^4 Vol_n^2 sigma_n 2^(n+2).
    [[nodiscard]] double C1() const;
    /// C^4 Vol_{n-1}^2 sigma_n (4 / D^(n-2)) [(1 + 4D^2)^(n/2) - (2D)^n].
    [[nodiscard]] double C2() const;

    /// Parameters for a disk of the given radius in the plane (D = 2r).
    static StabilityParams for_disk(double radius);
};

/// Throws DomainError naming the first violated hypothesis
/// (n >= 2, 0 < eps < 1, M1 >= 0, 0 < D <= 1, C > 0, b >= 0, volumes > 0).
void validate(const StabilityParams& p);
/// Same, plus k > 1.
void validate(const StabilityParams& p, double k);

/// Combined estimate C(k^(n+4) + E^(n+4)) eps^2 + C E^(n+2)(eps + eps^3) + M1^2 / (1 + E^2 + 3k^2).
double theorem1_bound(double k, const StabilityParams& p);

enum class Regime { LargeK, SmallK };  // k > E, k <= E

struct RegimeBound {
    Regime regime = Regime::LargeK;
    /// C1 k^(n+4) eps^2 + M1^2 / (1 + E^2 + 3k^2).
    double case_a = 0.0;
    /// C1 E^(n+4) eps^2 + C2 E^(n+2)(eps + eps^3) + M1^2 / (1 + E^2/D^2 + 4k^2).
    double case_b = 0.0;
    /// The one that applies to k.
    [[nodiscard]] double value() const { return regime == Regime::LargeK ? case_a : case_b; }
};

/// Both partial bounds at k, with the regime they belong to.
RegimeBound regime_bounds(double k, const StabilityParams& p);

/// omega(k) = C1 k^(n+4) eps^2 + M1^2 / (4 k^2).
double omega(double k, const StabilityParams& p);

struct OmegaOptimum {
    /// Unconstrained stationary point of omega.
    double k_star = 0.0;
    double omega_at_k_star = 0.0;
    /// Closed forms: omega(1), omega(k*) and, when E >= 1, omega(E).
    double omega_one = 0.0;
    double omega_k_star_closed = 0.0;
    double omega_E = 0.0;
    /// Minimizer of omega over the admissible range k >= max(1, E) and its value.
    double k_opt = 0.0;
    double omega_opt = 0.0;
    /// Which case selected k_opt: "k*<=1", "k*", or "E".
    std::string rule;
};

/// Throws DegenerateError when C1 = 0.
OmegaOptimum omega_and_kstar(const StabilityParams& p);

struct Theorem2Terms {
    double quadratic = 0.0;        // C (k^(n+4) + E^(n+4)) e^(2Db) eps^2
    double linear_high = 0.0;      // C E^(n+4) e^(D^2 b) eps
    double linear_low = 0.0;       // C E^(n+2) e^(D^2 b) eps
    double tail = 0.0;             // M1^2 / (1 + E^2 + 2k^2)
    [[nodiscard]] double total() const { return quadratic + linear_high + linear_low + tail; }
};

/// Attenuated estimate, term by term. Throws DomainError for b <= 0;
/// theorem1_bound covers the unattenuated case.
Theorem2Terms theorem2_terms(double k, const StabilityParams& p);
double theorem2_bound(double k, const StabilityParams& p);

}  // namespace potrec
