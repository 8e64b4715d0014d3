#include "symldf/errors.hpp"
#include "symldf/liouville.hpp"
#include "symldf/superoperator.hpp"

#include <doctest.h>

#include <cmath>

using namespace symldf;

namespace {

// Direct Lindblad action, independent of the superoperator assembly.
Matrix lindblad_action(const ModelParams& p, const Matrix& rho) {
    const Matrix h = build_hamiltonian(p);
    Matrix out = -kI * (h * rho - rho * h);
    for (const JumpOperator& j : build_jump_operators(p)) {
        const Matrix ld = j.op.adjoint() * j.op;
        out += j.op * rho * j.op.adjoint() - 0.5 * (ld * rho + rho * ld);
    }
    return out;
}

Matrix random_density(unsigned seed) {
    std::srand(seed);
    Matrix a = Matrix::Random(8, 8);
    Matrix rho = a * a.adjoint();
    return rho / rho.trace();
}

} // namespace

TEST_CASE("superoperator reproduces the Lindblad action") {
    ModelParams p;
    p.gamma_dephase = 0.03;
    const Matrix rho = random_density(3);
    const Matrix l = build_liouvillian(p).matrix;
    const Matrix got = devectorize(l * vectorize(rho));
    CHECK(max_abs(Matrix(got - lindblad_action(p, rho))) < 1e-13);
}

TEST_CASE("trace preservation and zero tilt") {
    const ModelParams p;
    const Matrix l = build_liouvillian(p).matrix;
    CHECK(max_abs(Matrix(trace_functional() * l)) < 1e-14);
    const Matrix l0 = build_tilted_liouvillian(p, {0.0, 0.0}).matrix;
    CHECK(max_abs(Matrix(l0 - l)) < 1e-15);
}

TEST_CASE("tilt weights the bath jump terms") {
    const ModelParams p;
    const CountingFields f{0.4, -0.3};
    const LiouvillianParts parts = liouvillian_parts(p);
    CHECK(parts.plus_factor(f) == doctest::Approx(std::exp(-0.4 + 0.3)));
    CHECK(parts.minus_factor(f) == doctest::Approx(std::exp(0.4 + 0.3)));
    const Matrix expected = parts.base + std::exp(-0.1) * parts.jump_plus + std::exp(0.7) * parts.jump_minus;
    CHECK(max_abs(Matrix(build_tilted_liouvillian(p, f).matrix - expected)) < 1e-14);
}

TEST_CASE("steady states per sector") {
    const ModelParams p;
    for (Sector s : {Sector::S, Sector::A}) {
        const Matrix rho = steady_state(p, s);
        CHECK(std::abs(rho.trace() - cplx(1.0)) < 1e-12);
        CHECK(hermiticity_error(rho) < 1e-12);
        CHECK(min_eigenvalue(rho) > -1e-12);
        CHECK(max_abs(lindblad_action(p, rho)) < 1e-12);
    }
    // two-level detailed balance for the antisymmetric block
    const Matrix ra = steady_state(p, Sector::A);
    const auto& b = symmetry_bases();
    const double excited = (b.antisym[0].adjoint() * ra * b.antisym[0])(0, 0).real();
    CHECK(excited == doctest::Approx(p.n_bath / (1.0 + 2.0 * p.n_bath)).epsilon(1e-10));
}

TEST_CASE("steady state needs symmetry for a sector") {
    ModelParams p;
    p.gamma_dephase = 0.01;
    CHECK_THROWS_AS(steady_state(p, Sector::S), BrokenSymmetry);
    const Matrix rho = steady_state(p, Sector::full);
    CHECK(max_abs(lindblad_action(p, rho)) < 1e-12);
    CHECK_THROWS_AS(steady_state(ModelParams{}, Sector::full), NonUniqueSteadyState);
}

TEST_CASE("null space dimension") {
    CHECK(count_null_eigenvalues(build_liouvillian(ModelParams{}).matrix) == 2);
    ModelParams p;
    p.gamma_dephase = 0.01;
    CHECK(count_null_eigenvalues(build_liouvillian(p).matrix) == 1);
}

TEST_CASE("evolution preserves trace and positivity") {
    const ModelParams p;
    const Matrix rho0 = random_density(11);
    const Matrix rho = evolve(rho0, 37.5, build_liouvillian(p));
    CHECK(std::abs(rho.trace() - cplx(1.0)) < 1e-12);
    CHECK(hermiticity_error(rho) < 1e-12);
    CHECK(min_eigenvalue(rho) > -1e-12);
    // untilted log-trace stays at zero
    CHECK(std::abs(log_trace_evolution(build_liouvillian(p), rho0, 500.0)) < 1e-10);
}

TEST_CASE("dimension checks") {
    CHECK_THROWS_AS(devectorize(Vector::Zero(7)), DimensionMismatch);
    CHECK_THROWS_AS(evolve(Matrix::Identity(4, 4), 1.0, build_liouvillian(ModelParams{})),
                    DimensionMismatch);
}
