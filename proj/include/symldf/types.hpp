// types.hpp: dense linear-algebra aliases shared by every module

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace symldf {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Three qubits; the Fock-Liouville space is the square of this.
inline constexpr Eigen::Index kHilbertDim = 8;
inline constexpr Eigen::Index kLiouvilleDim = kHilbertDim * kHilbertDim;

inline constexpr cplx kI{0.0, 1.0};

// Largest elementwise modulus; the norm used by every tolerance in this project.
inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

} // namespace symldf
