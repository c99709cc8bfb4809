#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "potrec/output.hpp"

using namespace potrec;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / "potrec_test_output";
    fs::create_directories(d);
    return d / name;
}

}  // namespace

TEST(Csv, NumbersRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(csv_number(v)), v);
    EXPECT_EQ(csv_number(0.5), "0.5");
    EXPECT_EQ(csv_number(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(Csv, EscapingAndLineEnds) {
    EXPECT_EQ(csv_escape("plain"), "plain");
    EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    CsvTable t({"a", "b"});
    t.row({"1", "x,y"});
    EXPECT_EQ(t.str(), "a,b\r\n1,\"x,y\"\r\n");
    EXPECT_EQ(t.rows(), 1u);
}

TEST(Heatmap, PgmLayoutAndRange) {
    const Grid g = Grid::build(20, 1.0, 0.7);
    std::vector<double> v(400, 0.0);
    for (int j = 0; j < 20; ++j)
        for (int i = 0; i < 20; ++i) v[static_cast<std::size_t>(j) * 20 + i] = g.interior(i, j) ? g.node(i, j).y : 0.0;
    const PotentialField f(g, v);
    const fs::path p = scratch("y.pgm");
    write_heatmap(p, f);
    const std::string data = slurp(p);
    const std::string head = "P5\n20 20\n255\n";
    ASSERT_EQ(data.size(), head.size() + 400);
    EXPECT_EQ(data.substr(0, head.size()), head);
    const auto px = [&](int row, int col) {
        return static_cast<unsigned char>(data[head.size() + static_cast<std::size_t>(row) * 20 + col]);
    };
    EXPECT_EQ(px(0, 0), 0);  // corner is outside the disk
    // Brightness grows towards the top of the image (largest y first).
    EXPECT_GT(px(4, 10), px(15, 10));
    const std::string range = slurp(p.string() + ".range");
    EXPECT_NE(range.find(','), std::string::npos);
    EXPECT_LT(std::stod(range), 0.0);
}

TEST(Output, GridAndPlanCsvShapes) {
    const Grid g = Grid::build(16, 1.0, 0.7);
    const PotentialField f = PotentialField::constant(g, 2.0);
    const fs::path p = scratch("grid.csv");
    write_grid_csv(p, f);
    const std::string text = slurp(p);
    EXPECT_EQ(text.substr(0, text.find('\r')), "i,j,x,y,inside,value");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 16 * 16);

    const SamplingPlan plan = build_sampling(3, 1.0, 2.0, 0.5, 1.0);
    const fs::path q = scratch("nested/dir/plan.csv");
    write_plan_csv(q, plan);
    const std::string pt = slurp(q);
    EXPECT_EQ(std::count(pt.begin(), pt.end(), '\n'), 1 + 9);
}
