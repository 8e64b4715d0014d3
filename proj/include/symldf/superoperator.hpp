// superoperator.hpp: Fock-Liouville vectorization and the SuperOperator value type
//
// Column stacking: vec(rho)[i + d*j] = rho(i, j). Left multiplication A rho maps
// to (1 (x) A) vec(rho); right multiplication rho B maps to (B^T (x) 1) vec(rho).

#pragma once

#include "symldf/types.hpp"

#include <optional>

namespace symldf {

struct CountingFields {
    double lambda{0.0};  // current bias
    double epsilon{0.0}; // activity bias

    friend bool operator==(const CountingFields&, const CountingFields&) = default;
};

struct SuperOperator {
    Matrix matrix;                      // kLiouvilleDim x kLiouvilleDim
    std::optional<CountingFields> tilt; // set when built by the tilted constructor

    Eigen::Index dim() const { return matrix.rows(); }
};

using DensityMatrix = Matrix;

Vector vectorize(const Matrix& rho);
Matrix devectorize(const Vector& v);

// <<sigma|rho>> = Tr(sigma^dagger rho)
cplx hs_inner(const Matrix& sigma, const Matrix& rho);

Matrix left_multiplication(const Matrix& a);
Matrix right_multiplication(const Matrix& b);

// Superoperator rho -> A rho B.
Matrix sandwich(const Matrix& a, const Matrix& b);

// Row functional v -> Tr(devectorize(v)).
Eigen::RowVectorXcd trace_functional(Eigen::Index hilbert_dim = kHilbertDim);

} // namespace symldf
