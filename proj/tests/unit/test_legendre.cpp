#include "symldf/errors.hpp"
#include "symldf/legendre.hpp"

#include <doctest.h>

#include <cmath>

using namespace symldf;

namespace {

LdfCurve sampled(Axis axis, const std::vector<double>& grid, double (*f)(double)) {
    LdfCurve c;
    c.axis = axis;
    c.grid = grid;
    for (double x : grid) c.values.push_back(f(x));
    c.dominant_sector.assign(grid.size(), DominantSector::S);
    c.derivative.assign(grid.size(), 0.0);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        c.derivative[i] = (c.values[i + 1] - c.values[i - 1]) / (grid[i + 1] - grid[i - 1]);
    }
    c.derivative.front() = c.derivative[1];
    c.derivative.back() = c.derivative[grid.size() - 2];
    return c;
}

} // namespace

TEST_CASE("quadratic SCGF gives a Gaussian rate function") {
    const auto grid = linspace(-3.0, 3.0, 601);
    const LdfCurve c = sampled(Axis::lambda, grid, [](double l) { return 0.5 * l * l; });
    const RateFunctionCurve f = invert_curve(c, {-1.0, -0.3, 0.0, 0.5, 2.0});
    for (std::size_t k = 0; k < f.grid.size(); ++k) {
        const double q = f.grid[k];
        CHECK(f.values[k] == doctest::Approx(-0.5 * q * q).epsilon(1e-12));
        CHECK(f.dual[k] == doctest::Approx(-q).epsilon(1e-12));
        CHECK_FALSE(f.affine_flags[k]);
    }
    CHECK(f.observable == Observable::current);
}

TEST_CASE("kinked SCGF gives an affine piece") {
    const auto grid = linspace(-2.0, 2.0, 401);
    const LdfCurve c = sampled(Axis::epsilon, grid, [](double e) { return std::abs(e) + 0.25 * e * e; });
    const RateFunctionCurve f = invert_curve(c, {-0.5, 0.0, 0.5});
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(f.values[k]) < 1e-12);
        CHECK(f.affine_flags[k]);
    }
    CHECK(f.observable == Observable::activity);
}

TEST_CASE("edge optima") {
    const auto grid = linspace(-1.0, 1.0, 101);
    const LdfCurve c = sampled(Axis::lambda, grid, [](double l) { return 0.5 * l * l; });
    CHECK_THROWS_AS(invert_curve(c, {5.0}), GridTooNarrow);
    const RateFunctionCurve f = invert_curve(c, {5.0}, {.strict = false});
    CHECK(f.clipped[0]);
    CHECK_THROWS_AS(invert_curve(sampled(Axis::lambda, {0.0, 1.0}, [](double l) { return l; })),
                    InvalidParameter);
}

TEST_CASE("symmetric lambda grid") {
    const double kappa = -std::log(11.0);
    const auto g = symmetric_lambda_grid(kappa, 3.0, 0.03);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(g[i] + g[g.size() - 1 - i] - kappa) < 1e-13);
    }
    bool has_zero = false, has_kappa = false;
    for (double v : g) {
        has_zero |= std::abs(v) < 1e-13;
        has_kappa |= std::abs(v - kappa) < 1e-13;
    }
    CHECK(has_zero);
    CHECK(has_kappa);
    CHECK(g.front() <= kappa / 2.0 - 3.0 + 0.03);
}

TEST_CASE("joint surface of an uncorrelated quadratic") {
    // mu = (l^2 + e^2)/2 + ... only as a shape test on a synthetic surface
    LdfSurface s;
    s.lambda_grid = linspace(-2.0, 2.0, 81);
    s.epsilon_grid = linspace(-2.0, 2.0, 81);
    s.mu.resize(81, 81);
    for (int i = 0; i < 81; ++i) {
        for (int j = 0; j < 81; ++j) {
            const double l = s.lambda_grid[static_cast<std::size_t>(i)];
            const double e = s.epsilon_grid[static_cast<std::size_t>(j)];
            s.mu(i, j) = 0.5 * l * l + 0.5 * e * e;
        }
    }
    s.dominant_sector.assign(81 * 81, DominantSector::S);
    const JointRateSurface g = invert_surface(s, {-0.5, 0.0, 0.5}, {0.2, 1.0});
    CHECK(g.is_infeasible(0, 0));
    CHECK(std::isinf(g.value(0, 0)));
    CHECK_FALSE(g.is_infeasible(1, 0));
    CHECK(g.value(1, 0) == doctest::Approx(-0.02).epsilon(1e-12));
    CHECK(g.value(2, 1) == doctest::Approx(-0.625).epsilon(1e-12));
    CHECK(g.lambda_star[g.index(2, 1)] == doctest::Approx(-0.5));
    CHECK(g.epsilon_star[g.index(2, 1)] == doctest::Approx(-1.0));
}

TEST_CASE("conditional rate functions") {
    const ModelParams p;
    const TiltedGenerator gen(p);
    const auto lg = symmetric_lambda_grid(p.kappa(), 2.0, 0.05);
    const auto eg = linspace(-2.0, 2.0, 81);
    const LdfSurface s = scan_surface(gen, lg, eg, overlap_both());
    const std::vector<double> q{-0.04, 0.0, 0.04};
    const std::vector<double> a{0.02, 0.05};
    const JointRateSurface joint = invert_surface(s, q, a);
    const RateFunctionCurve fq = invert_curve(scan_curve(gen, Axis::lambda, lg, overlap_both()), q, {.strict = false});
    const RateFunctionCurve ia = invert_curve(scan_curve(gen, Axis::epsilon, eg, overlap_both()), a, {.strict = false});
    const ConditionalLdfs c = conditional_ldfs(joint, fq, ia);
    CHECK(std::isinf(c.current_given_activity(0, 0)));
    CHECK(c.activity_given_current(1, 1) == doctest::Approx(joint.value(1, 1) - fq.values[1]));
    CHECK(c.activity_given_current(0, 1) == doctest::Approx(c.activity_given_current(2, 1)).epsilon(1e-10));
    CHECK_THROWS_AS(conditional_ldfs(joint, ia, fq), GridMismatch);
}

TEST_CASE("geometry report") {
    const ModelParams p;
    const SectorAverages avg = sector_averages(p);
    const GeometryReport g = geometry_report(avg, p);
    CHECK(g.a_c == doctest::Approx(std::abs(avg.q_S)));
    CHECK(g.kappa == doctest::Approx(-2.39790).epsilon(1e-5));
    CHECK(g.delta == doctest::Approx(std::log(11.0)));
    CHECK(g.u0 == doctest::Approx(fitted_kink_line_slope(TiltedGenerator(p))).epsilon(0.05));
    CHECK(g.maxwell_p(0.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(g.maxwell_p(avg.q_S) == doctest::Approx(1.0));
    ModelParams d = p;
    d.gamma_dephase = 0.01;
    CHECK_THROWS_AS(geometry_report(avg, d), BrokenSymmetry);
    SectorAverages same = avg;
    same.a_A = same.a_S;
    same.q_A = same.q_S;
    CHECK_THROWS_AS(geometry_report(same, p), DegenerateSectors);
}
