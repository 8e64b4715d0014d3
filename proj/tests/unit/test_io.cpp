#include "symldf/errors.hpp"
#include "symldf/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace symldf;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / ("symldf_test_" + name);
    std::filesystem::remove_all(d);
    return d;
}

} // namespace

TEST_CASE("numbers round trip") {
    for (double v : {0.1, -2.3978952727983707, 1e-300, 12345.0}) {
        CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "INF");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-INF");
    CHECK(format_number(std::nan("")) == "NAN");
}

TEST_CASE("csv table") {
    CsvTable t({"a", "b"});
    t.add_row({"1", "2"});
    CHECK(t.str() == "a,b\n1,2\n");
    CHECK_THROWS_AS(t.add_row({"1"}), DimensionMismatch);
}

TEST_CASE("joint table marks infeasible cells") {
    JointRateSurface j;
    j.q_grid = {-0.1, 0.0};
    j.a_grid = {0.05};
    j.values = RealMatrix::Zero(2, 1);
    j.values(1, 0) = -0.25;
    j.infeasible = {1, 0};
    j.affine_flags = {0, 1};
    j.clipped = {0, 0};
    const std::string s = joint_table(j).str();
    CHECK(s.find("INFEASIBLE") != std::string::npos);
    CHECK(s.find("-0.25") != std::string::npos);
    CHECK(s.substr(0, s.find('\n')) == "q,a,G_or_INF,affine");
}

TEST_CASE("manifest records every file") {
    const auto dir = scratch_dir("manifest");
    Manifest m(dir, 0xabcULL);
    CsvTable t({"x"});
    t.add_row({"1"});
    t.add_row({"2"});
    m.write("cmd_values.csv", t);
    m.write_text("cmd_notes.txt", "k = v\n");
    const auto path = m.finish();
    CHECK(slurp(dir / "cmd_values.csv") == "x\n1\n2\n");
    const std::string manifest = slurp(path);
    CHECK(manifest.find("cmd_values.csv,2," + hex64(0xabcULL)) != std::string::npos);
    CHECK(manifest.find("cmd_notes.txt,1,") != std::string::npos);
    CHECK(m.files().size() == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable output directory") {
    CHECK_THROWS_AS(Manifest("/proc/symldf_cannot_write_here", 0), ConfigError);
}
