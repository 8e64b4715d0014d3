// liouville.hpp: Lindblad generator, its counting-field tilt, steady states and
// time evolution.

#pragma once

#include "symldf/model.hpp"
#include "symldf/superoperator.hpp"
#include "symldf/symmetry.hpp"

namespace symldf {

// Exponent signs of lambda on the two counted bath channels. The physical tilt
// is e^{-lambda-eps} on L+ and e^{+lambda-eps} on L-; anything else exists only
// so tests can inject a sign error.
struct TiltConvention {
    double plus_sign{-1.0};
    double minus_sign{+1.0};
};

// L(lambda, eps) = base + e^{s+ lambda - eps} J+ + e^{s- lambda - eps} J-, where
// J+- are the bath-channel jump terms L rho L^dagger and `base` holds everything
// else (Hamiltonian, all anticommutators, dephasing jumps).
struct LiouvillianParts {
    Matrix base;
    Matrix jump_plus;
    Matrix jump_minus;
    TiltConvention convention;

    Matrix assemble(CountingFields f) const;
    double plus_factor(CountingFields f) const;
    double minus_factor(CountingFields f) const;
};

LiouvillianParts liouvillian_parts(const ModelParams& p, TiltConvention convention = {});

// -i[H, .] + sum_k D[L_k]
SuperOperator build_liouvillian(const ModelParams& p);

SuperOperator build_tilted_liouvillian(const ModelParams& p, CountingFields f,
                                       TiltConvention convention = {});

// Unit-trace null eigenoperator of L restricted to the sector's diagonal block
// (S, A; needs gamma = 0) or of the full generator (full; needs a unique fixed
// point, otherwise NonUniqueSteadyState).
DensityMatrix steady_state(const ModelParams& p, Sector sector);

// Eigenvalues with modulus <= tol.
int count_null_eigenvalues(const Matrix& superop, double tol = 1e-10);

// exp(superop * t) rho0. Tilted generators grow like e^{t mu}; use
// log_trace_evolution for long times.
Matrix evolve(const Matrix& rho0, double t, const SuperOperator& superop);

// ln Tr[exp(superop * t) rho0], propagated in chunks with renormalization so it
// stays finite for any t.
double log_trace_evolution(const SuperOperator& superop, const Matrix& rho0, double t,
                           double chunk = 25.0);

// Physicality checks used by tests and validation.
double hermiticity_error(const Matrix& rho);
double min_eigenvalue(const Matrix& hermitian);

} // namespace symldf
