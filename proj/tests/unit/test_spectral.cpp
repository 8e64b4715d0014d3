#include "symldf/errors.hpp"
#include "symldf/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace symldf;

namespace {

// Jump-rate oracle: <q> = Tr(L+ rho L+^dag) - Tr(L- rho L-^dag), <a> the sum.
std::pair<double, double> rate_oracle(const ModelParams& p, Sector s) {
    const Matrix rho = steady_state(p, s);
    const auto jumps = build_jump_operators(p);
    const double up = (jumps[0].op * rho * jumps[0].op.adjoint()).trace().real();
    const double down = (jumps[1].op * rho * jumps[1].op.adjoint()).trace().real();
    return {up - down, up + down};
}

// Antisymmetric sector = thermal two-level system with rates k_up, k_down.
double two_level_mu(const ModelParams& p, double eps) {
    const double ku = p.gamma_bath * p.n_bath;
    const double kd = p.gamma_bath * (p.n_bath + 1.0);
    return 0.5 * (-(ku + kd) + std::sqrt((ku - kd) * (ku - kd) + 4.0 * ku * kd * std::exp(-2.0 * eps)));
}

} // namespace

TEST_CASE("mu vanishes at zero fields") {
    const TiltedGenerator gen(ModelParams{});
    CHECK(std::abs(gen.mu({0.0, 0.0}, overlap_both()).value) < 1e-13);
    for (Sector s : {Sector::S, Sector::A}) {
        CHECK(std::abs(gen.leading(s, {0.0, 0.0}).value) < 1e-13);
    }
}

TEST_CASE("antisymmetric sector matches the two-level formula") {
    const ModelParams p{0.5, 0.1, 0.3, 0.0};
    const TiltedGenerator gen(p);
    for (double l : {-1.3, 0.0, 0.8}) {
        for (double e : {-0.7, 0.0, 1.1}) {
            CHECK(gen.leading(Sector::A, {l, e}).value.real() ==
                  doctest::Approx(two_level_mu(p, e)).epsilon(1e-11));
        }
    }
}

TEST_CASE("sector averages agree with the jump-rate oracle") {
    for (double n : {0.1, 0.5, 2.0}) {
        const ModelParams p{0.5, 0.1, n, 0.0};
        const SectorAverages avg = sector_averages(p);
        const auto s = rate_oracle(p, Sector::S);
        const auto a = rate_oracle(p, Sector::A);
        CHECK(avg.q_S == doctest::Approx(s.first).epsilon(1e-8));
        CHECK(avg.a_S == doctest::Approx(s.second).epsilon(1e-8));
        CHECK(std::abs(avg.q_A - a.first) < 1e-9);
        CHECK(avg.a_A == doctest::Approx(a.second).epsilon(1e-8));
    }
}

TEST_CASE("first cumulant equals the average") {
    const ModelParams p;
    const SectorAverages avg = sector_averages(p);
    CHECK(cumulant(p, Observable::current, 1, Sector::S) == doctest::Approx(avg.q_S).epsilon(1e-8));
    CHECK(cumulant(p, Observable::activity, 1, Sector::A) == doctest::Approx(avg.a_A).epsilon(1e-8));
}

TEST_CASE("two-level counting statistics") {
    const ModelParams p;
    const double ku = p.gamma_bath * p.n_bath;
    const double kd = p.gamma_bath * (p.n_bath + 1.0);
    // Alternating renewal process: one cycle is Exp(ku) + Exp(kd), two jumps per cycle.
    const double m = 1.0 / ku + 1.0 / kd;
    const double v = 1.0 / (ku * ku) + 1.0 / (kd * kd);
    CHECK(cumulant(p, Observable::activity, 2, Sector::A) == doctest::Approx(4.0 * v / (m * m * m)).epsilon(1e-6));
    // the net current of an alternating process is bounded, so its cumulants vanish
    CHECK(std::abs(cumulant(p, Observable::current, 2, Sector::A)) < 1e-8);
}

TEST_CASE("cumulant preconditions") {
    CHECK_THROWS_AS(cumulant(ModelParams{}, Observable::current, 2, Sector::full), NonUniqueSteadyState);
    CHECK_THROWS_AS(cumulant(ModelParams{}, Observable::current, 4, Sector::S), InvalidParameter);
    ModelParams d;
    d.gamma_dephase = 0.01;
    CHECK_THROWS_AS(sector_averages(d), BrokenSymmetry);
    CHECK(std::isfinite(cumulant(d, Observable::activity, 2, Sector::full)));
}

TEST_CASE("fluctuation symmetry of the full SCGF") {
    const ModelParams p{0.5, 0.1, 0.5, 0.0};
    const TiltedGenerator gen(p);
    for (double l : linspace(-3.0, 2.0, 11)) {
        for (double e : {-1.0, 0.0, 2.0}) {
            const double a = gen.mu({l, e}, overlap_both()).value;
            const double b = gen.mu({p.kappa() - l, e}, overlap_both()).value;
            CHECK(std::abs(a - b) < 1e-10);
        }
    }
}

TEST_CASE("dephasing uses the full-space eigenvalue") {
    ModelParams p;
    p.gamma_dephase = 0.01;
    const TiltedGenerator gen(p);
    const MuValue m = gen.mu({0.3, 0.2}, overlap_only(Sector::A));
    CHECK(m.sector == DominantSector::none);
    CHECK_THROWS_AS(gen.leading(Sector::S, {0.0, 0.0}), BrokenSymmetry);
}

TEST_CASE("empty overlap") {
    const TiltedGenerator gen(ModelParams{});
    CHECK_THROWS_AS(gen.mu({0.0, 0.0}, SectorOverlap{}), EmptyOverlap);
}

TEST_CASE("grids") {
    const auto g = linspace(-1.0, 1.0, 5);
    CHECK(g.size() == 5);
    CHECK(g[2] == 0.0);
    CHECK_THROWS_AS(scan_curve(ModelParams{}, Axis::lambda, {0.0, -1.0, 1.0}, overlap_both()),
                    InvalidParameter);
}

TEST_CASE("kink detection on synthetic data") {
    const auto x = linspace(-1.0, 1.0, 201);
    std::vector<double> smooth, kinked;
    for (double v : x) {
        smooth.push_back(std::cos(2.0 * v));
        kinked.push_back(std::max(0.3 * (v - 0.123), -0.7 * (v - 0.123)) + 0.1 * v * v);
    }
    CHECK(detect_kinks(x, smooth).empty());
    const auto k = detect_kinks(x, kinked);
    REQUIRE(k.size() == 1);
    CHECK(k[0].position == doctest::Approx(0.123).epsilon(1e-3));
    CHECK(k[0].jump == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("theta has kinks at 0 and kappa") {
    const ModelParams p;
    const auto grid = linspace(-4.0, 2.0, 601);
    const LdfCurve theta = scan_curve(p, Axis::lambda, grid, overlap_both());
    const auto k = detect_kinks(theta.grid, theta.values);
    REQUIRE(k.size() == 2);
    CHECK(std::abs(k[0].position - p.kappa()) < 0.01);
    CHECK(std::abs(k[1].position) < 0.01);
    // a purely antisymmetric start sees a flat, smooth theta
    const LdfCurve ta = scan_curve(p, Axis::lambda, grid, overlap_only(Sector::A));
    CHECK(detect_kinks(ta.grid, ta.values).empty());
}
