#include "potrec/bounds.hpp"

#include <cmath>
#include <sstream>

#include "potrec/common.hpp"

namespace potrec {

namespace {

[[noreturn]] void violated(const std::string& what, double value) {
    std::ostringstream msg;
    msg << "hypothesis violated: " << what << " (got " << value << ")";
    throw DomainError(msg.str());
}

}  // namespace

double unit_ball_volume(int n) {
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double StabilityParams::E() const { return -std::log(eps); }

double StabilityParams::C1() const {
    const double c4 = std::pow(C_omega, 4);
    return c4 * vol_n * vol_n * sigma_n * std::pow(2.0, n + 2);
}

double StabilityParams::C2() const {
    const double c4 = std::pow(C_omega, 4);
    const double bracket = std::pow(1.0 + 4.0 * D * D, 0.5 * n) - std::pow(2.0 * D, n);
    return c4 * vol_nm1 * vol_nm1 * sigma_n * (4.0 / std::pow(D, n - 2)) * bracket;
}

StabilityParams StabilityParams::for_disk(double radius) {
    StabilityParams p;
    p.D = 2.0 * radius;
    p.vol_n = kPi * radius * radius;
    p.vol_nm1 = 2.0 * radius;
    p.sigma_n = unit_ball_volume(2);
    return p;
}

void validate(const StabilityParams& p) {
    if (p.n < 2) violated("n >= 2", p.n);
    if (!(p.eps > 0.0)) violated("eps > 0", p.eps);
    if (!(p.eps < 1.0)) violated("eps < 1", p.eps);
    if (!(p.M1 >= 0.0)) violated("M1 >= 0", p.M1);
    if (!(p.D > 0.0)) violated("D > 0", p.D);
    if (!(p.D <= 1.0)) violated("D <= 1", p.D);
    if (!(p.C_omega > 0.0)) violated("C(Omega) > 0", p.C_omega);
    if (!(p.b >= 0.0)) violated("b >= 0", p.b);
    if (!(p.vol_n > 0.0)) violated("Vol_n > 0", p.vol_n);
    if (!(p.vol_nm1 > 0.0)) violated("Vol_{n-1} > 0", p.vol_nm1);
    if (!(p.sigma_n > 0.0)) violated("sigma_n > 0", p.sigma_n);
}

void validate(const StabilityParams& p, double k) {
    validate(p);
    if (!(k > 1.0)) violated("k > 1", k);
}

double theorem1_bound(double k, const StabilityParams& p) {
    validate(p, k);
    const double E = p.E();
    const double eps = p.eps;
    const int n = p.n;
    return p.C_omega * (std::pow(k, n + 4) + std::pow(E, n + 4)) * eps * eps +
           p.C_omega * std::pow(E, n + 2) * (eps + eps * eps * eps) + p.M1 * p.M1 / (1.0 + E * E + 3.0 * k * k);
}

RegimeBound regime_bounds(double k, const StabilityParams& p) {
    validate(p, k);
    const double E = p.E();
    const double eps = p.eps;
    const int n = p.n;
    RegimeBound r;
    r.regime = k > E ? Regime::LargeK : Regime::SmallK;
    r.case_a = p.C1() * std::pow(k, n + 4) * eps * eps + p.M1 * p.M1 / (1.0 + E * E + 3.0 * k * k);
    r.case_b = p.C1() * std::pow(E, n + 4) * eps * eps + p.C2() * std::pow(E, n + 2) * (eps + eps * eps * eps) +
               p.M1 * p.M1 / (1.0 + E * E / (p.D * p.D) + 4.0 * k * k);
    return r;
}

double omega(double k, const StabilityParams& p) {
    return p.C1() * std::pow(k, p.n + 4) * p.eps * p.eps + p.M1 * p.M1 / (4.0 * k * k);
}

OmegaOptimum omega_and_kstar(const StabilityParams& p) {
    validate(p);
    const double C1 = p.C1();
    if (C1 == 0.0) throw DegenerateError("C1(Omega) = 0: omega has no interior minimum");
    const int n = p.n;
    const double eps = p.eps;
    const double M2 = p.M1 * p.M1;
    const double E = p.E();

    OmegaOptimum o;
    o.k_star = std::pow(M2 / (2.0 * (n + 4) * C1 * eps * eps), 1.0 / (n + 6));
    o.omega_at_k_star = omega(o.k_star, p);
    o.omega_one = C1 * eps * eps + M2 / 4.0;
    const double q = 2.0 * (n + 4);
    o.omega_k_star_closed = std::pow(C1, 2.0 / (n + 6)) * std::pow(p.M1, 2.0 * (n + 4) / (n + 6)) *
                            (std::pow(q, -static_cast<double>(n + 4) / (n + 6)) + 0.25 * std::pow(q, 2.0 / (n + 6))) *
                            std::pow(eps, 4.0 / (n + 6));
    o.omega_E = C1 * std::pow(E, n + 4) * eps * eps + M2 / (4.0 * E * E);

    // omega is unimodal, so its minimum over k >= floor is at max(k*, floor).
    if (o.k_star <= 1.0 && E <= 1.0) {
        o.k_opt = 1.0;
        o.rule = "k*<=1";
    } else if (E >= 1.0 && o.k_star <= E) {
        o.k_opt = E;
        o.rule = "E";
    } else {
        o.k_opt = o.k_star;
        o.rule = "k*";
    }
    o.omega_opt = omega(o.k_opt, p);
    return o;
}

Theorem2Terms theorem2_terms(double k, const StabilityParams& p) {
    validate(p, k);
    if (!(p.b > 0.0)) {
        throw DomainError("attenuated estimate needs b > 0; use the unattenuated bound for b = 0");
    }
    const double E = p.E();
    const double eps = p.eps;
    const int n = p.n;
    const double C = p.C_omega;
    Theorem2Terms t;
    t.quadratic = C * (std::pow(k, n + 4) + std::pow(E, n + 4)) * std::exp(2.0 * p.D * p.b) * eps * eps;
    t.linear_high = C * std::pow(E, n + 4) * std::exp(p.D * p.D * p.b) * eps;
    t.linear_low = C * std::pow(E, n + 2) * std::exp(p.D * p.D * p.b) * eps;
    t.tail = p.M1 * p.M1 / (1.0 + E * E + 2.0 * k * k);
    return t;
}

double theorem2_bound(double k, const StabilityParams& p) { return theorem2_terms(k, p).total(); }

}  // namespace potrec
