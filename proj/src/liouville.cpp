#include "symldf/liouville.hpp"

#include "symldf/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace symldf {

double LiouvillianParts::plus_factor(CountingFields f) const {
    return std::exp(convention.plus_sign * f.lambda - f.epsilon);
}

double LiouvillianParts::minus_factor(CountingFields f) const {
    return std::exp(convention.minus_sign * f.lambda - f.epsilon);
}

Matrix LiouvillianParts::assemble(CountingFields f) const {
    return base + plus_factor(f) * jump_plus + minus_factor(f) * jump_minus;
}

LiouvillianParts liouvillian_parts(const ModelParams& p, TiltConvention convention) {
    const Matrix h = build_hamiltonian(p);
    LiouvillianParts parts;
    parts.convention = convention;
    parts.base = -kI * (left_multiplication(h) - right_multiplication(h));
    parts.jump_plus = Matrix::Zero(kLiouvilleDim, kLiouvilleDim);
    parts.jump_minus = Matrix::Zero(kLiouvilleDim, kLiouvilleDim);
    for (const auto& [channel, l] : build_jump_operators(p)) {
        const Matrix ldl = l.adjoint() * l;
        parts.base -= 0.5 * (left_multiplication(ldl) + right_multiplication(ldl));
        const Matrix jump = sandwich(l, l.adjoint());
        if (channel == JumpChannel::plus) {
            parts.jump_plus = jump;
        } else if (channel == JumpChannel::minus) {
            parts.jump_minus = jump;
        } else {
            parts.base += jump;
        }
    }
    return parts;
}

SuperOperator build_tilted_liouvillian(const ModelParams& p, CountingFields f,
                                       TiltConvention convention) {
    if (!std::isfinite(f.lambda) || !std::isfinite(f.epsilon)) {
        throw InvalidParameter("counting fields must be finite");
    }
    return {liouvillian_parts(p, convention).assemble(f), f};
}

SuperOperator build_liouvillian(const ModelParams& p) {
    SuperOperator s = build_tilted_liouvillian(p, {0.0, 0.0});
    s.tilt.reset();
    return s;
}

int count_null_eigenvalues(const Matrix& superop, double tol) {
    Eigen::ComplexEigenSolver<Matrix> solver(superop, false);
    int count = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        if (std::abs(solver.eigenvalues()(i)) <= tol) ++count;
    }
    return count;
}

namespace {

// Smallest right-singular vector of a real generator in a Hermitian basis, mapped
// back to an 8x8 operator and normalized to unit trace.
DensityMatrix null_operator(const RealMatrix& generator, const Matrix& basis) {
    Eigen::JacobiSVD<RealMatrix> svd(generator, Eigen::ComputeFullV);
    const RealVector x = svd.matrixV().col(generator.cols() - 1);
    Matrix rho = devectorize(basis * x.cast<cplx>());
    const cplx tr = rho.trace();
    if (std::abs(tr) <= 1e-12) {
        throw NoPhysicalState("null eigenoperator has zero trace");
    }
    rho /= tr;
    return 0.5 * (rho + rho.adjoint());
}

} // namespace

DensityMatrix steady_state(const ModelParams& p, Sector sector) {
    const SuperOperator l = build_liouvillian(p);
    if (sector == Sector::full) {
        const int nulls = count_null_eigenvalues(l.matrix);
        if (nulls != 1) {
            throw NonUniqueSteadyState("generator has " + std::to_string(nulls) +
                                       " null eigenvalues");
        }
        const Matrix& basis = full_hermitian_basis();
        const RealMatrix g = (basis.adjoint() * l.matrix * basis).real();
        return null_operator(g, basis);
    }
    if (!p.symmetric()) {
        throw BrokenSymmetry("sector steady states need gamma_dephase = 0");
    }
    const Block b = diagonal_block(sector);
    return null_operator(restrict_superop_real(l.matrix, b), block_map()[b]);
}

Matrix evolve(const Matrix& rho0, double t, const SuperOperator& superop) {
    if (t < 0.0) {
        throw InvalidParameter("evolve: t must be >= 0");
    }
    if (rho0.size() != superop.dim()) {
        throw DimensionMismatch("evolve: state and superoperator dimensions differ");
    }
    if (t == 0.0) {
        return rho0;
    }
    const Matrix prop = (superop.matrix * cplx(t)).exp();
    return devectorize(prop * vectorize(rho0));
}

double log_trace_evolution(const SuperOperator& superop, const Matrix& rho0, double t,
                           double chunk) {
    if (t < 0.0 || chunk <= 0.0) {
        throw InvalidParameter("log_trace_evolution: t >= 0 and chunk > 0 required");
    }
    const auto steps = static_cast<long>(std::floor(t / chunk));
    const double rest = t - static_cast<double>(steps) * chunk;
    Vector v = vectorize(rho0);
    double log_scale = 0.0;
    const auto renormalize = [&] {
        const double s = v.cwiseAbs().maxCoeff();
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw ZeroNorm("log_trace_evolution: propagated state vanished or overflowed");
        }
        v /= s;
        log_scale += std::log(s);
    };
    if (steps > 0) {
        const Matrix step = (superop.matrix * cplx(chunk)).exp();
        for (long i = 0; i < steps; ++i) {
            v = step * v;
            renormalize();
        }
    }
    if (rest > 0.0) {
        v = (superop.matrix * cplx(rest)).exp() * v;
        renormalize();
    }
    const double tr = (trace_functional() * v)(0).real();
    if (tr <= 0.0) {
        throw NoPhysicalState("log_trace_evolution: non-positive generating function");
    }
    return log_scale + std::log(tr);
}

double hermiticity_error(const Matrix& rho) { return max_abs(Matrix(rho - rho.adjoint())); }

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (hermitian + hermitian.adjoint()),
                                                 Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

} // namespace symldf
