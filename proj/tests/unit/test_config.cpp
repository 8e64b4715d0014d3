#include "symldf/config.hpp"
#include "symldf/errors.hpp"

#include <doctest.h>

#include <string>

using namespace symldf;

TEST_CASE("defaults") {
    const RunConfig c;
    CHECK(c.model == ModelParams::reference());
    CHECK(c.sweep.bz_values.size() == 50);
    CHECK(c.sweep.bz_values.front() == doctest::Approx(0.01));
    CHECK(c.sweep.bz_values.back() == doctest::Approx(0.5));
    CHECK(c.schema_version == kSchemaVersion);
}

TEST_CASE("sections and overrides") {
    const RunConfig c = parse_run_config(R"(# comment
seed = 7
[model]
b_z = 0.25
gamma_dephase = 0.01
[trajectories]
gammas = 0, 0.02
initial = antisymmetric
[output]
dir = somewhere
)");
    CHECK(c.seed == 7);
    CHECK(c.model.b_z == 0.25);
    CHECK(c.model.gamma_dephase == 0.01);
    CHECK(c.trajectories.gammas == std::vector<double>{0.0, 0.02});
    CHECK(c.trajectories.initial == InitialKind::antisymmetric);
    CHECK(c.output_dir == "somewhere");
    CHECK(c.ldf.q_points == RunConfig{}.ldf.q_points);
}

TEST_CASE("canonical text round trip") {
    RunConfig c;
    c.model.n_bath = 0.123456789;
    c.trajectories.n_traj = 17;
    c.sweep.n_values = {0.5, 1.5};
    const RunConfig back = parse_run_config(to_text(c));
    CHECK(to_text(back) == to_text(c));
    CHECK(config_hash(back) == config_hash(c));
    RunConfig other = c;
    other.seed += 1;
    CHECK(config_hash(other) != config_hash(c));
}

TEST_CASE("unknown key suggests the nearest name") {
    try {
        parse_run_config("[model]\nbz = 0.3\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("b_z") != std::string::npos);
        CHECK(e.line() == 2);
    }
}

TEST_CASE("rejected input") {
    CHECK_THROWS_AS(parse_run_config("[modle]\nb_z = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[model]\nb_z = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[model]\nb_z = inf\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[model]\ngamma_bath = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("schema_version = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[trajectories]\nn_traj = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[trajectories]\ninitial = both\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("just text\n"), ConfigError);
    CHECK_THROWS_AS(load_run_config("/nonexistent/run.cfg"), ConfigError);
}
