#include "symldf/acceptance.hpp"
#include "symldf/commands.hpp"
#include "symldf/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace symldf;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / ("symldf_cmd_" + name);
    std::filesystem::remove_all(d);
    return d;
}

// Near-zero eigenvalues in the "full" rows of spectrum_eigenvalues.csv.
int null_rows(const std::filesystem::path& csv) {
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "re,im,sector");
    int count = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string re, im, sector;
        std::getline(ss, re, ',');
        std::getline(ss, im, ',');
        std::getline(ss, sector, ',');
        if (sector == "full" && std::hypot(std::stod(re), std::stod(im)) < 1e-10) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("spectrum command counts steady states") {
    RunConfig c;
    c.output_dir = scratch_dir("spectrum").string();
    std::ostringstream log;
    const CommandResult r = run_command("spectrum", c, log);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.files.back().filename() == "run_manifest.txt");
    CHECK(null_rows(std::filesystem::path(c.output_dir) / "spectrum_eigenvalues.csv") == 2);

    c.model.gamma_dephase = 0.01;
    c.output_dir = scratch_dir("spectrum_deph").string();
    run_command("spectrum", c, log);
    CHECK(null_rows(std::filesystem::path(c.output_dir) / "spectrum_eigenvalues.csv") == 1);
}

TEST_CASE("every emitted file is in the manifest") {
    RunConfig c;
    c.output_dir = scratch_dir("manifest").string();
    c.trajectories.n_traj = 20;
    c.trajectories.duration = 60.0;
    c.trajectories.records = 1;
    c.trajectories.gammas = {0.0};
    std::ostringstream log;
    const CommandResult r = run_command("trajectories", c, log);
    std::ifstream in(r.files.back());
    std::stringstream manifest;
    manifest << in.rdbuf();
    std::size_t listed = 0;
    for (const auto& entry : std::filesystem::directory_iterator(c.output_dir)) {
        const std::string name = entry.path().filename().string();
        if (name == "run_manifest.txt") continue;
        CHECK(name.rfind("trajectories_", 0) == 0);
        CHECK(manifest.str().find(name + ",") != std::string::npos);
        ++listed;
    }
    CHECK(listed + 1 == r.files.size());
}

TEST_CASE("trajectory output is reproducible") {
    RunConfig c;
    c.trajectories.n_traj = 10;
    c.trajectories.duration = 80.0;
    c.trajectories.records = 1;
    c.trajectories.gammas = {0.01};
    std::ostringstream log;
    const auto first = scratch_dir("rep1");
    c.output_dir = first.string();
    run_command("trajectories", c, log);
    c.output_dir = scratch_dir("rep2").string();
    run_command("trajectories", c, log);
    const auto read = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string name = "trajectories_events_gamma0.01_traj0.csv";
    const std::string a = read(first / name);
    CHECK(a.size() > std::string("time,channel\n").size());
    CHECK(a == read(std::filesystem::path(c.output_dir) / name));
}

TEST_CASE("unknown command and sweeps with dephasing") {
    RunConfig c;
    c.output_dir = scratch_dir("bad").string();
    std::ostringstream log;
    CHECK_THROWS_AS(run_command("plot", c, log), ConfigError);
    c.model.gamma_dephase = 0.01;
    CHECK_THROWS_AS(run_command("sweep-n", c, log), ConfigError);
}

TEST_CASE("a flipped emission tilt breaks the fluctuation relation") {
    AcceptanceOptions o;
    o.only = {4};
    const auto good = run_acceptance(o);
    REQUIRE(good.size() == 1);
    CHECK(good[0].outcome == Outcome::pass);
    o.convention.minus_sign = -1.0;
    const auto bad = run_acceptance(o);
    CHECK(bad[0].outcome == Outcome::fail);
}

TEST_CASE("configured symmetry check") {
    CHECK(symmetry_check(ModelParams{}).outcome == Outcome::pass);
    ModelParams d;
    d.gamma_dephase = 0.01;
    const CriterionResult r = symmetry_check(d);
    CHECK(r.outcome == Outcome::expected_fail);
    CHECK(r.passed());
    CHECK(format_result(r).rfind("[XFAIL] 0 ", 0) == 0);
}
