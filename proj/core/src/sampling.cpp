#include "potrec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace potrec {

SamplingPlan build_sampling(int n_lines, double kappa_min, double kappa_max, double d_kappa, double k) {
    if (n_lines < 1) throw ConfigError("sampling plan needs at least one slope line");
    if (!(kappa_min > 0.0) || kappa_max < kappa_min) {
        throw ConfigError("sampling plan needs 0 < kappa_min <= kappa_max");
    }
    if (!(d_kappa > 0.0)) throw ConfigError("sampling plan needs d_kappa > 0");
    if (!(k > 0.0)) throw DomainError("wavenumber k must be positive");

    SamplingPlan p;
    p.k_ = k;
    p.n_total_ = n_lines;
    p.d_kappa_ = d_kappa;
    p.lines_.resize(static_cast<std::size_t>(n_lines));
    for (int s = 0; s < n_lines; ++s) p.lines_[static_cast<std::size_t>(s)] = s;
    const auto count = static_cast<std::size_t>(std::floor((kappa_max - kappa_min) / d_kappa + 1e-9)) + 1;
    p.kappas_.resize(count);
    for (std::size_t l = 0; l < count; ++l) p.kappas_[l] = kappa_min + static_cast<double>(l) * d_kappa;
    return p;
}

PhasePoint SamplingPlan::point(std::size_t index) const {
    const std::size_t nl = lines_.size();
    const std::size_t l = index / nl;
    const std::size_t s = index % nl;
    PhasePoint pt;
    pt.length = static_cast<int>(l);
    pt.line = lines_[s];
    pt.kappa = kappas_[l];
    pt.theta = pt.line * d_theta();
    pt.direction = {std::cos(pt.theta), std::sin(pt.theta)};
    pt.companion = rotate90(pt.direction);
    pt.xi = pt.direction * pt.kappa;
    pt.weight = weight_scale_ * pt.kappa * d_kappa_ * d_theta() / (4.0 * kPi * kPi);
    return pt;
}

std::vector<PhasePoint> SamplingPlan::points() const {
    std::vector<PhasePoint> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
    return out;
}

SamplingPlan restrict_lines(const SamplingPlan& plan, std::span<const int> line_indices) {
    if (line_indices.empty()) throw ConfigError("line subset must not be empty");
    std::vector<int> lines(line_indices.begin(), line_indices.end());
    for (int s : lines) {
        if (s < 0 || s >= plan.total_lines()) {
            throw ConfigError("line index " + std::to_string(s) + " outside 0.." + std::to_string(plan.total_lines() - 1));
        }
    }
    std::vector<int> sorted = lines;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("line subset has duplicate entries");
    }
    SamplingPlan p = plan;
    p.lines_ = std::move(sorted);
    p.weight_scale_ = static_cast<double>(plan.total_lines()) / static_cast<double>(p.lines_.size());
    return p;
}

std::vector<int> spread_lines(int n_lines, int count) {
    if (count < 1 || count > n_lines) throw ConfigError("line count must be in 1..n_lines");
    const double dtheta = 2.0 * kPi / n_lines;
    auto axis_angle = [&](int s) { return std::fmod(s * dtheta, kPi); };
    auto axis_dist = [](double a, double b) {
        const double d = std::fmod(std::abs(a - b), kPi);
        return std::min(d, kPi - d);
    };
    std::vector<int> chosen;
    std::vector<bool> used(static_cast<std::size_t>(n_lines), false);
    for (int i = 0; i < count; ++i) {
        const double target = i * kPi / count;
        int best = -1;
        double best_d = 0.0;
        for (int s = 0; s < n_lines; ++s) {
            if (used[static_cast<std::size_t>(s)]) continue;
            const double d = axis_dist(axis_angle(s), target);
            if (best < 0 || d < best_d - 1e-12) {
                best = s;
                best_d = d;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        chosen.push_back(best);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

std::vector<WeightedMode> hermitian_complete(std::span<const WeightedMode> modes) {
    // Candidate mirrors share |xi|; bucket by rounded length.
    std::map<long long, std::vector<std::size_t>> by_length;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        by_length[std::llround(modes[i].kappa * 1e6)].push_back(i);
    }
    auto find_mirror = [&](std::size_t i) -> std::ptrdiff_t {
        const WeightedMode& m = modes[i];
        const double tol = 1e-9 * std::max(1.0, m.kappa);
        const long long key = std::llround(m.kappa * 1e6);
        for (long long kk = key - 1; kk <= key + 1; ++kk) {
            auto it = by_length.find(kk);
            if (it == by_length.end()) continue;
            for (std::size_t j : it->second) {
                if (j == i) continue;
                const Vec2 s = modes[j].xi + m.xi;
                if (std::abs(s.x) <= tol && std::abs(s.y) <= tol) return static_cast<std::ptrdiff_t>(j);
            }
        }
        return -1;
    };

    std::vector<WeightedMode> out;
    out.reserve(2 * modes.size());
    std::vector<bool> done(modes.size(), false);
    std::vector<cplx> settled(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (done[i]) {
            WeightedMode m = modes[i];
            m.value = settled[i];
            out.push_back(m);
            continue;
        }
        const std::ptrdiff_t j = find_mirror(i);
        if (j >= 0) {
            const auto ju = static_cast<std::size_t>(j);
            const cplx avg = 0.5 * (modes[i].value + std::conj(modes[ju].value));
            WeightedMode m = modes[i];
            m.value = avg;
            out.push_back(m);
            done[i] = true;
            done[ju] = true;
            settled[ju] = std::conj(avg);
            if (ju < i) {
                // Mirror already emitted unchanged would be a bug; indices only move forward.
                throw std::logic_error("hermitian_complete visited a mirror out of order");
            }
        } else {
            WeightedMode m = modes[i];
            m.weight *= 0.5;
            WeightedMode r = m;
            r.xi = -m.xi;
            r.value = std::conj(m.value);
            r.mirror = true;
            out.push_back(m);
            out.push_back(r);
            done[i] = true;
        }
    }
    return out;
}

std::vector<WeightedMode> hermitian_complete(const SamplingPlan& plan, std::span<const cplx> coefficients) {
    if (coefficients.size() != plan.size()) {
        throw ConfigError("coefficient count does not match the sampling plan");
    }
    std::vector<WeightedMode> modes;
    modes.reserve(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const PhasePoint p = plan.point(i);
        modes.push_back({p.xi, p.kappa, p.weight, coefficients[i], p.length, p.line, false});
    }
    return hermitian_complete(modes);
}

}  // namespace potrec
