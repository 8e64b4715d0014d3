#include "symldf/superoperator.hpp"

#include "symldf/errors.hpp"

#include <cmath>

namespace symldf {

Vector vectorize(const Matrix& rho) {
    if (rho.rows() != rho.cols()) {
        throw DimensionMismatch("vectorize: operator must be square");
    }
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix devectorize(const Vector& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size()) {
        throw DimensionMismatch("devectorize: length is not a perfect square");
    }
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

cplx hs_inner(const Matrix& sigma, const Matrix& rho) {
    if (sigma.rows() != rho.rows() || sigma.cols() != rho.cols()) {
        throw DimensionMismatch("hs_inner: operator shapes differ");
    }
    return (sigma.adjoint() * rho).trace();
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace

Matrix left_multiplication(const Matrix& a) {
    return kron(Matrix::Identity(a.rows(), a.cols()), a);
}

Matrix right_multiplication(const Matrix& b) {
    return kron(b.transpose(), Matrix::Identity(b.rows(), b.cols()));
}

Matrix sandwich(const Matrix& a, const Matrix& b) { return kron(b.transpose(), a); }

Eigen::RowVectorXcd trace_functional(Eigen::Index hilbert_dim) {
    Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(hilbert_dim * hilbert_dim);
    for (Eigen::Index i = 0; i < hilbert_dim; ++i) {
        t(i + hilbert_dim * i) = 1.0;
    }
    return t;
}

} // namespace symldf
