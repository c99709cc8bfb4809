#include "potrec/helmholtz.hpp"

#include <boost/math/tools/roots.hpp>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace potrec {

namespace {

using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;
using Vector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

struct BoundaryCoupling {
    int row;
    cplx coef;
    Vec2 point;
};

}  // namespace

struct HelmholtzSystem::Impl {
    SparseMatrix matrix;
    std::vector<BoundaryCoupling> couplings;
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
};

HelmholtzSystem::HelmholtzSystem(const Grid& grid, const PotentialField* c, double k, double b,
                                 SolverOptions options)
    : grid_(&grid), k_(k), b_(b), options_(options), impl_(std::make_unique<Impl>()) {
    const double h = grid.spacing();
    scale_ = 1.0 + options.dispersion_gamma * cplx(k * k, -k * b) * (h * h / 12.0);
    if (!(k > 0.0)) throw DomainError("wavenumber k must be positive");
    if (b < 0.0) throw DomainError("attenuation b must be nonnegative");
    if (c != nullptr && !c->grid().same_layout(grid)) {
        throw ConfigError("potential lives on a different grid than the operator");
    }

    const auto n = static_cast<int>(grid.interior_count());
    std::vector<Eigen::Triplet<cplx, int>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) * 5);

    // Axis pairs: (East, West) along x and (North, South) along y.
    constexpr int plus_dir[2] = {0, 2};
    constexpr int minus_dir[2] = {1, 3};
    constexpr int di[4] = {1, -1, 0, 0};
    constexpr int dj[4] = {0, 0, 1, -1};

    for (int row = 0; row < n; ++row) {
        const auto [i, j] = grid.interior_nodes()[static_cast<std::size_t>(row)];
        const Vec2 p = grid.node(i, j);
        const CutCell& cell = grid.cut_cell(static_cast<std::size_t>(row));
        const double cval = c != nullptr ? c->at(i, j) : 0.0;
        cplx diag(-k * k + cval, k * b);

        for (int axis = 0; axis < 2; ++axis) {
            const int dp = plus_dir[axis];
            const int dm = minus_dir[axis];
            const double hp = cell.fraction[dp] * h;
            const double hm = cell.fraction[dm] * h;
            diag += scale_ * (2.0 / (hp * hm));
            const cplx coef_p = scale_ * (-2.0 / (hp * (hp + hm)));
            const cplx coef_m = scale_ * (-2.0 / (hm * (hp + hm)));
            for (const auto& [d, coef, dist] : {std::tuple{dp, coef_p, hp}, std::tuple{dm, coef_m, hm}}) {
                if (cell.cut[d]) {
                    const Vec2 q{p.x + di[d] * dist, p.y + dj[d] * dist};
                    impl_->couplings.push_back({row, coef, q});
                } else {
                    triplets.emplace_back(row, grid.unknown(i + di[d], j + dj[d]), coef);
                }
            }
        }
        triplets.emplace_back(row, row, diag);
    }

    impl_->matrix.resize(n, n);
    impl_->matrix.setFromTriplets(triplets.begin(), triplets.end());
    impl_->matrix.makeCompressed();
    impl_->lu.analyzePattern(impl_->matrix);
    impl_->lu.factorize(impl_->matrix);
    if (impl_->lu.info() != Eigen::Success) {
        throw SolverError("sparse LU factorization failed at k = " + std::to_string(k) + ": " +
                          impl_->lu.lastErrorMessage());
    }
    if (b == 0.0) {
        resonance_ = resonance_check(grid.radius(), k, options.eigen_gap_tolerance);
    }
}

HelmholtzSystem::~HelmholtzSystem() = default;
HelmholtzSystem::HelmholtzSystem(HelmholtzSystem&&) noexcept = default;
HelmholtzSystem& HelmholtzSystem::operator=(HelmholtzSystem&&) noexcept = default;

cplx HelmholtzSystem::entry(std::size_t row, std::size_t col) const {
    return impl_->matrix.coeff(static_cast<int>(row), static_cast<int>(col));
}

std::vector<cplx> HelmholtzSystem::apply(std::span<const cplx> x) const {
    Eigen::Map<const Vector> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Vector y = impl_->matrix * xv;
    return {y.data(), y.data() + y.size()};
}

std::vector<cplx> HelmholtzSystem::rhs(const BoundaryFunction& g0, std::span<const cplx> source) const {
    std::vector<cplx> f(dimension(), cplx(0.0, 0.0));
    if (!source.empty()) {
        if (source.size() != f.size()) throw ConfigError("volume source size does not match interior nodes");
        std::copy(source.begin(), source.end(), f.begin());
    }
    if (g0) {
        for (const auto& bc : impl_->couplings) f[static_cast<std::size_t>(bc.row)] -= bc.coef * g0(bc.point);
    }
    return f;
}

ComplexField HelmholtzSystem::solve(const BoundaryFunction& g0, std::span<const cplx> source) const {
    const std::vector<cplx> f = rhs(g0, source);
    Eigen::Map<const Vector> fv(f.data(), static_cast<Eigen::Index>(f.size()));
    Vector u = impl_->lu.solve(fv);

    const double fnorm = fv.norm();
    const double residual = fnorm > 0.0 ? (impl_->matrix * u - fv).norm() / fnorm : 0.0;

    ComplexField out;
    out.grid = grid_;
    out.values.assign(u.data(), u.data() + u.size());
    out.dirichlet = g0 ? g0 : BoundaryFunction([](Vec2) { return cplx(0.0, 0.0); });
    out.residual = residual;
    if (!std::isfinite(residual) || residual > options_.residual_tolerance) {
        NearEigenvalueWarning w;
        w.k = k_;
        w.residual = residual;
        w.reason = "residual above tolerance";
        if (resonance_) {
            w.nearest_eigen_k = resonance_->nearest_eigen_k;
            w.relative_gap = resonance_->relative_gap;
        }
        out.warning = w;
    } else if (resonance_) {
        out.warning = *resonance_;
        out.warning->residual = residual;
    }
    return out;
}

ComplexField solve_linearized(const HelmholtzSystem& homogeneous, const PotentialField& c, const WaveVectorPair& pair) {
    const Grid& g = homogeneous.grid();
    if (!c.grid().same_layout(g)) throw ConfigError("potential lives on a different grid than the operator");
    std::vector<cplx> source(g.interior_count());
    for (std::size_t u = 0; u < source.size(); ++u) {
        const double cv = c.at_unknown(u);
        source[u] = cv == 0.0 ? cplx(0.0, 0.0) : -cv * eval_probe(pair, Probe::U0, g.interior_point(u));
    }
    return homogeneous.solve(nullptr, source);
}

ComplexField solve_linearized(const Grid& grid, const PotentialField& c, const WaveVectorPair& pair) {
    const HelmholtzSystem sys(grid, nullptr, pair.k, pair.b);
    return solve_linearized(sys, c, pair);
}

namespace {

// Three-point Lagrange weights at t for nodes {0, 1, 2}.
std::array<double, 3> lagrange3(double t) {
    return {0.5 * (t - 1.0) * (t - 2.0), -t * (t - 2.0), 0.5 * t * (t - 1.0)};
}

}  // namespace

cplx interpolate(const ComplexField& field, Vec2 p, Vec2 outward) {
    const Grid& g = *field.grid;
    const double h = g.spacing();
    const double sx = (p.x + g.half_width()) / h;
    const double sy = (p.y + g.half_width()) / h;
    // Three nodes per axis, shifted away from the outward direction.
    const int fx = static_cast<int>(std::floor(sx));
    const int fy = static_cast<int>(std::floor(sy));
    const int ix = outward.x > 0.0 ? fx - 1 : fx;
    const int iy = outward.y > 0.0 ? fy - 1 : fy;
    const auto wx = lagrange3(sx - ix);
    const auto wy = lagrange3(sy - iy);
    cplx sum(0.0, 0.0);
    for (int b = 0; b < 3; ++b) {
        for (int a = 0; a < 3; ++a) {
            const int u = g.unknown(ix + a, iy + b);
            if (u < 0) {
                std::ostringstream msg;
                msg << "interpolation stencil at (" << p.x << ", " << p.y
                    << ") leaves the interior; grid too coarse for radius " << g.radius();
                throw GeometryError(msg.str());
            }
            sum += wx[static_cast<std::size_t>(a)] * wy[static_cast<std::size_t>(b)] *
                   field.values[static_cast<std::size_t>(u)];
        }
    }
    return sum;
}

BoundaryTrace neumann_trace(const ComplexField& field, const BoundaryDiscretization& boundary, TraceOptions options) {
    if (field.grid == nullptr) throw ConfigError("field has no grid");
    if (std::abs(boundary.radius - field.grid->radius()) > 1e-12 * field.grid->radius()) {
        throw ConfigError("boundary and grid describe different circles");
    }
    const double delta = options.offset_factor * field.grid->spacing();
    BoundaryTrace t{&boundary, {}};
    t.values.reserve(boundary.size());
    for (std::size_t j = 0; j < boundary.size(); ++j) {
        const Vec2 x = boundary.points[j];
        const Vec2 n = boundary.normals[j];
        const cplx f0 = field.dirichlet(x);
        const cplx f1 = interpolate(field, x - n * delta, n);
        const cplx f2 = interpolate(field, x - n * (2.0 * delta), n);
        const cplx f3 = interpolate(field, x - n * (3.0 * delta), n);
        t.values.push_back((11.0 * f0 - 18.0 * f1 + 9.0 * f2 - 2.0 * f3) / (6.0 * delta));
    }
    return t;
}

std::vector<double> disk_dirichlet_wavenumbers(double radius, double k_max) {
    const double x_max = k_max * radius;
    std::vector<double> out;
    constexpr double step = 0.05;
    for (int m = 0; m <= static_cast<int>(x_max) + 1; ++m) {
        const double order = m;
        double x0 = std::max(order, 1e-3);
        double f0 = std::cyl_bessel_j(order, x0);
        for (double x1 = x0 + step; x1 <= x_max + step; x1 += step) {
            const double f1 = std::cyl_bessel_j(order, x1);
            if ((f0 < 0.0) != (f1 < 0.0)) {
                std::uintmax_t iters = 100;
                const auto [lo, hi] = boost::math::tools::toms748_solve(
                    [order](double x) { return std::cyl_bessel_j(order, x); }, x0, x1, f0, f1,
                    boost::math::tools::eps_tolerance<double>(52), iters);
                const double root = 0.5 * (lo + hi);
                if (root <= x_max) out.push_back(root / radius);
            }
            x0 = x1;
            f0 = f1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<NearEigenvalueWarning> resonance_check(double radius, double k, double gap_tolerance) {
    const auto eig = disk_dirichlet_wavenumbers(radius, 1.1 * k + 1.0);
    double best = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    for (double e : eig) {
        const double g = std::abs(e - k) / k;
        if (g < gap) {
            gap = g;
            best = e;
        }
    }
    if (gap > gap_tolerance) return std::nullopt;
    NearEigenvalueWarning w;
    w.k = k;
    w.nearest_eigen_k = best;
    w.relative_gap = gap;
    w.reason = "k is close to a Dirichlet eigenvalue of the disk";
    return w;
}

}  // namespace potrec
