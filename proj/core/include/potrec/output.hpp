#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "potrec/helmholtz.hpp"
#include "potrec/measurement.hpp"
#include "potrec/reconstruction.hpp"
#include "potrec/sampling.hpp"

namespace potrec {

/// Shortest round-trip-safe rendering with 17 significant digits.
std::string csv_number(double v);
/// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(const std::string& s);

/// RFC 4180 style table: header row, CRLF line ends.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    CsvTable& row(std::vector<std::string> cells);
    [[nodiscard]] std::string str() const;
    void write(const std::filesystem::path& path) const;
    [[nodiscard]] std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

/// 8-bit binary PGM of the node values, top row = largest y. Gray level is
/// round(255 (v - lo) / (hi - lo)) with lo/hi the extrema over interior
/// nodes; exterior nodes are black. `path` + ".range" receives "lo,hi".
void write_heatmap(const std::filesystem::path& path, const PotentialField& field);

/// i, j, x, y, inside, value.
void write_grid_csv(const std::filesystem::path& path, const PotentialField& field);
/// x, y, re, im on interior nodes.
void write_field_csv(const std::filesystem::path& path, const ComplexField& field);
/// Interior-node values of a complex field as a real field (real part).
PotentialField real_part(const ComplexField& field);
/// angle, x, y, re, im.
void write_trace_csv(const std::filesystem::path& path, const BoundaryTrace& trace);
/// l, s, kappa, theta, sigma.
void write_plan_csv(const std::filesystem::path& path, const SamplingPlan& plan);
/// length, line, kappa, theta, re, im, abs, re_true, im_true, abs_true.
void write_coefficients_csv(const std::filesystem::path& path, const CoefficientTable& table);
/// kappa, y1, y2, then re_j, im_j for every boundary sample.
void write_measurements_csv(const std::filesystem::path& path, std::span<const MeasurementRecord> records);

}  // namespace potrec
