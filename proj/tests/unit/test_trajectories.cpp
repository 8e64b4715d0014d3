#include "symldf/errors.hpp"
#include "symldf/liouville.hpp"
#include "symldf/parallel.hpp"
#include "symldf/trajectories.hpp"

#include <doctest.h>

#include <cmath>

using namespace symldf;

namespace {

const ModelParams kWarm{0.5, 0.1, 0.5, 0.0};

} // namespace

TEST_CASE("same seed, same trajectory") {
    const Vector psi = mixed_sector_state();
    const TrajectoryRecord a = sample_trajectory(kWarm, psi, 300.0, 42);
    const TrajectoryRecord b = sample_trajectory(kWarm, psi, 300.0, 42);
    const TrajectoryRecord c = sample_trajectory(kWarm, psi, 300.0, 43);
    REQUIRE(a.jump_events.size() == b.jump_events.size());
    for (std::size_t i = 0; i < a.jump_events.size(); ++i) {
        CHECK(a.jump_events[i].time == b.jump_events[i].time);
        CHECK(a.jump_events[i].channel == b.jump_events[i].channel);
    }
    CHECK(a.xi == b.xi);
    bool differs = a.jump_events.size() != c.jump_events.size();
    for (std::size_t i = 0; !differs && i < a.jump_events.size(); ++i) {
        differs = a.jump_events[i].time != c.jump_events[i].time;
    }
    CHECK(differs);
    CHECK(a.sample_times.size() == 500);
    CHECK(a.sample_times.back() == doctest::Approx(300.0));
}

TEST_CASE("first waiting time of the antisymmetric ground state") {
    // |1>|-> can only absorb, at rate Gamma n; nothing else happens first.
    const Vector psi = symmetry_bases().antisym[1];
    const double rate = kWarm.gamma_bath * kWarm.n_bath;
    const int n = 4000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const TrajectoryRecord r = sample_trajectory(kWarm, psi, 2000.0, trajectory_seed(7, i));
        REQUIRE_FALSE(r.jump_events.empty());
        CHECK(r.jump_events.front().channel == JumpChannel::plus);
        sum += r.jump_events.front().time;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - 1.0 / rate) < 3.0 * (1.0 / rate) / std::sqrt(double(n)));
}

TEST_CASE("counts match the event log") {
    ModelParams p = kWarm;
    p.gamma_dephase = 0.01;
    const TrajectoryRecord r = sample_trajectory(p, mixed_sector_state(), 500.0, 5);
    long plus = 0, minus = 0, deph = 0;
    double last = 0.0;
    for (const JumpEvent& e : r.jump_events) {
        CHECK(e.time >= last);
        last = e.time;
        if (e.channel == JumpChannel::plus) ++plus;
        else if (e.channel == JumpChannel::minus) ++minus;
        else ++deph;
    }
    CHECK(plus == r.k_plus);
    CHECK(minus == r.k_minus);
    CHECK(deph > 0);
    CHECK(r.current() == plus - minus);
    CHECK(r.activity() == plus + minus);
    CHECK(std::abs(r.final_state.norm() - 1.0) < 1e-10);
}

TEST_CASE("a state with no decay channel runs to the end") {
    const ModelParams dark{0.5, 0.0, 0.1, 0.0};
    const TrajectoryRecord r = sample_trajectory(dark, mixed_sector_state(), 50.0, 1);
    CHECK(r.jump_events.empty());
    CHECK(r.xi.front() == doctest::Approx(0.5));
    CHECK(r.xi.back() == doctest::Approx(0.5));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(sample_trajectory(kWarm, Vector::Zero(4), 1.0, 0), DimensionMismatch);
    CHECK_THROWS_AS(sample_trajectory(kWarm, Vector::Zero(8), 1.0, 0), ZeroNorm);
    CHECK_THROWS_AS(sample_trajectory(kWarm, Vector(2.0 * mixed_sector_state()), 1.0, 0), InvalidParameter);
    CHECK_THROWS_AS(sample_trajectory(kWarm, mixed_sector_state(), -1.0, 0), InvalidParameter);
    TrajectoryOptions o;
    o.xi_samples = 1;
    CHECK_THROWS_AS(sample_trajectory(kWarm, mixed_sector_state(), 1.0, 0, o), InvalidParameter);
}

TEST_CASE("mixtures") {
    const Matrix rho = steady_state(kWarm, Sector::S);
    const InitialState init = InitialState::mixture(rho);
    CHECK(max_abs(Matrix(init.density() - rho)) < 1e-12);
    Matrix bad = Matrix::Identity(8, 8) / 8.0;
    bad(0, 0) = -0.5;
    bad(1, 1) += 0.625;
    CHECK_THROWS_AS(InitialState::mixture(bad), NoPhysicalState);
}

TEST_CASE("ensembles do not depend on the worker count") {
    const InitialState init = InitialState::mixture(Matrix::Identity(8, 8) / 8.0);
    set_max_threads(1);
    const EnsembleStats a = ensemble_run(kWarm, init, 100.0, 64, 99);
    set_max_threads(4);
    const EnsembleStats b = ensemble_run(kWarm, init, 100.0, 64, 99);
    set_max_threads(0);
    CHECK(a.mean_xi == b.mean_xi);
    CHECK(a.k_plus == b.k_plus);
    CHECK(a.mean_q == b.mean_q);
}

TEST_CASE("order parameter events") {
    TrajectoryRecord r;
    r.duration = 100.0;
    r.jump_events = {{1.0, JumpChannel::plus},  {2.0, JumpChannel::deph1}, {3.0, JumpChannel::plus},
                     {4.0, JumpChannel::minus}, {5.0, JumpChannel::minus}, {60.0, JumpChannel::minus}};
    const OrderParameterEvents ev = order_parameters(r);
    CHECK(ev.c_plus == std::vector<double>{3.0});
    CHECK(ev.c_minus == std::vector<double>{5.0, 60.0});
    CHECK(quiescent_fraction(ev, 100.0, 10.0) == doctest::Approx(0.8));
    CHECK(quiescent_fraction(ev, 100.0, 50.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(quiescent_fraction(ev, 100.0, 0.0), InvalidParameter);
}

TEST_CASE("freezing needs settled trajectories") {
    const EnsembleStats st = ensemble_run(kWarm, InitialState::pure(mixed_sector_state()), 10.0, 50, 3);
    try {
        freezing_statistics(st, 1e-3);
        FAIL("expected NotFrozen");
    } catch (const NotFrozen& e) {
        CHECK_FALSE(e.seeds().empty());
        CHECK(e.seeds().size() <= 50);
    }
}

TEST_CASE("master-equation antisymmetric weight") {
    const DensityMatrix rho0 = mixed_sector_state() * mixed_sector_state().adjoint();
    const auto w = antisymmetric_weight(kWarm, rho0, {0.0, 10.0, 500.0});
    for (double v : w) CHECK(v == doctest::Approx(0.5).epsilon(1e-10));
    ModelParams p = kWarm;
    p.gamma_dephase = 0.05;
    const auto d = antisymmetric_weight(p, rho0, {0.0, 5000.0});
    const double stationary =
        (symmetry_bases().antisym_projector * steady_state(p, Sector::full)).trace().real();
    CHECK(d[0] == doctest::Approx(0.5));
    CHECK(d[1] == doctest::Approx(stationary).epsilon(1e-6));
}

TEST_CASE("standard errors shrink as one over root n") {
    const InitialState init = InitialState::pure(mixed_sector_state());
    const EnsembleStats small = ensemble_run(kWarm, init, 100.0, 200, 11);
    const EnsembleStats large = ensemble_run(kWarm, init, 100.0, 800, 12);
    CHECK(small.stderr_a / large.stderr_a == doctest::Approx(2.0).epsilon(0.25));
    const std::size_t mid = small.times.size() / 2;
    CHECK(small.stderr_xi[mid] / large.stderr_xi[mid] == doctest::Approx(2.0).epsilon(0.25));
    CHECK(small.freeze_fraction() >= 0.0);
    CHECK(small.freeze_fraction() <= 1.0);
}
