#include "potrec/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace potrec {

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw ConfigError("CSV row width does not match the header");
    rows_.push_back(std::move(cells));
    return *this;
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(cells[i]);
        }
        out += "\r\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
    if (!out) throw ConfigError("write failed for " + path.string());
}

void write_heatmap(const std::filesystem::path& path, const PotentialField& field) {
    const Grid& g = field.grid();
    const int n = g.n_per_side();
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (std::size_t u = 0; u < g.interior_count(); ++u) {
        const double v = field.at_unknown(u);
        if (first) {
            lo = hi = v;
            first = false;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    std::string data = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
    data.reserve(data.size() + static_cast<std::size_t>(n) * n);
    for (int j = n - 1; j >= 0; --j) {
        for (int i = 0; i < n; ++i) {
            unsigned char px = 0;
            if (g.interior(i, j)) {
                const double t = std::clamp((field.at(i, j) - lo) / span, 0.0, 1.0);
                px = static_cast<unsigned char>(std::lround(255.0 * t));
            }
            data.push_back(static_cast<char>(px));
        }
    }
    write_text(path, data);
    std::filesystem::path side = path;
    side += ".range";
    write_text(side, csv_number(lo) + "," + csv_number(hi) + "\n");
}

void write_grid_csv(const std::filesystem::path& path, const PotentialField& field) {
    const Grid& g = field.grid();
    CsvTable t({"i", "j", "x", "y", "inside", "value"});
    for (int j = 0; j < g.n_per_side(); ++j) {
        for (int i = 0; i < g.n_per_side(); ++i) {
            const Vec2 p = g.node(i, j);
            t.row({std::to_string(i), std::to_string(j), csv_number(p.x), csv_number(p.y),
                   g.interior(i, j) ? "1" : "0", csv_number(field.at(i, j))});
        }
    }
    t.write(path);
}

void write_field_csv(const std::filesystem::path& path, const ComplexField& field) {
    const Grid& g = *field.grid;
    CsvTable t({"x", "y", "re", "im"});
    for (std::size_t u = 0; u < g.interior_count(); ++u) {
        const Vec2 p = g.interior_point(u);
        t.row({csv_number(p.x), csv_number(p.y), csv_number(field.values[u].real()), csv_number(field.values[u].imag())});
    }
    t.write(path);
}

PotentialField real_part(const ComplexField& field) {
    const Grid& g = *field.grid;
    const int n = g.n_per_side();
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (std::size_t u = 0; u < g.interior_count(); ++u) {
        const auto [i, j] = g.interior_nodes()[u];
        v[static_cast<std::size_t>(j) * n + i] = field.values[u].real();
    }
    return PotentialField(g, std::move(v));
}

void write_trace_csv(const std::filesystem::path& path, const BoundaryTrace& trace) {
    const BoundaryDiscretization& b = *trace.boundary;
    CsvTable t({"angle", "x", "y", "re", "im"});
    for (std::size_t j = 0; j < trace.size(); ++j) {
        t.row({csv_number(b.angles[j]), csv_number(b.points[j].x), csv_number(b.points[j].y),
               csv_number(trace.values[j].real()), csv_number(trace.values[j].imag())});
    }
    t.write(path);
}

void write_plan_csv(const std::filesystem::path& path, const SamplingPlan& plan) {
    CsvTable t({"l", "s", "kappa", "theta", "sigma"});
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const PhasePoint p = plan.point(i);
        t.row({std::to_string(p.length), std::to_string(p.line), csv_number(p.kappa), csv_number(p.theta),
               csv_number(p.weight)});
    }
    t.write(path);
}

void write_coefficients_csv(const std::filesystem::path& path, const CoefficientTable& table) {
    CsvTable t({"length", "line", "kappa", "theta", "re", "im", "abs", "re_true", "im_true", "abs_true"});
    for (const auto& e : table.entries) {
        const cplx tr = e.truth.value_or(cplx(std::nan(""), std::nan("")));
        t.row({std::to_string(e.point.length), std::to_string(e.point.line), csv_number(e.point.kappa),
               csv_number(e.point.theta), csv_number(e.value.real()), csv_number(e.value.imag()),
               csv_number(std::abs(e.value)), csv_number(tr.real()), csv_number(tr.imag()),
               csv_number(e.truth ? std::abs(tr) : std::nan(""))});
    }
    t.write(path);
}

void write_measurements_csv(const std::filesystem::path& path, std::span<const MeasurementRecord> records) {
    std::size_t width = 0;
    for (const auto& r : records) width = std::max(width, r.g1_prime.size());
    std::vector<std::string> header{"kappa", "y1", "y2"};
    for (std::size_t j = 0; j < width; ++j) {
        header.push_back("re_" + std::to_string(j));
        header.push_back("im_" + std::to_string(j));
    }
    CsvTable t(header);
    for (const auto& r : records) {
        if (r.g1_prime.size() != width) throw ConfigError("records have different boundary sizes");
        std::vector<std::string> row{csv_number(r.pair.kappa()), csv_number(r.pair.e1.x), csv_number(r.pair.e1.y)};
        for (const cplx& v : r.g1_prime.values) {
            row.push_back(csv_number(v.real()));
            row.push_back(csv_number(v.imag()));
        }
        t.row(std::move(row));
    }
    t.write(path);
}

}  // namespace potrec
