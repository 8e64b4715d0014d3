// model.hpp: three-qubit XX triangle coupled to a thermal bath on qubit 0
//
// Computational basis is lexicographic |s0 s1 s2>, index = 4*s0 + 2*s1 + s2,
// with s0 the bath-coupled qubit. Pauli convention: sigma_z|0> = +|0>, so with
// B_z > 0 the state |0> is the excited level and sigma_plus = |0><1|.

#pragma once

#include "symldf/types.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace symldf {

struct ModelParams {
    double b_z{0.5};
    double gamma_bath{0.1};
    double n_bath{0.1};
    double gamma_dephase{0.0};

    // B_z=0.5, Gamma=0.1, n=0.1, gamma=0
    static ModelParams reference() { return {}; }

    // Throws InvalidParameter on negative rates or non-finite values.
    void validate() const;

    bool symmetric() const noexcept { return gamma_dephase == 0.0; }

    // Detailed-balance constant ln[n/(n+1)] of the bath channel.
    double kappa() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Flat "key = value" text with keys b_z, gamma_bath, n_bath, gamma_dephase.
// Values are printed with 17 significant digits so they round-trip exactly.
std::string to_config_text(const ModelParams& p);
ModelParams params_from_config_text(const std::string& text);
ModelParams params_from_map(const std::map<std::string, std::string>& kv);

// Single-qubit operators.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_plus();  // |0><1|
Matrix sigma_minus(); // |1><0|

// Embeds a 2x2 operator on `site` (0, 1 or 2) into the 8-dim space.
Matrix site_operator(const Matrix& op, int site);

// |s0 s1 s2>
Vector basis_state(int s0, int s1, int s2);

// H = sum_{i<j} sx_i sx_j + B_z sum_i sz_i
Matrix build_hamiltonian(const ModelParams& p);

enum class JumpChannel { plus, minus, deph0, deph1, deph2 };

inline constexpr std::array<JumpChannel, 5> kAllChannels{
    JumpChannel::plus, JumpChannel::minus, JumpChannel::deph0, JumpChannel::deph1,
    JumpChannel::deph2};

const char* to_string(JumpChannel c);

struct JumpOperator {
    JumpChannel channel;
    Matrix op;
};

// [L+, L-, LD0, LD1, LD2]; LD_i = sqrt(gamma) sigma_plus_i sigma_minus_i.
std::vector<JumpOperator> build_jump_operators(const ModelParams& p);

struct SymmetryBases {
    std::array<Vector, 6> sym;     // {|0>,|1>}_0 x {|00>, |+>, |11>}
    std::array<Vector, 2> antisym; // {|0>,|1>}_0 x |->
    Matrix exchange;               // pi_12, swaps qubits 1 and 2
    Matrix antisym_projector;      // P_- = 1_0 x |-><-|
};

SymmetryBases build_symmetry_bases();

// Process-wide copy; parameter independent.
const SymmetryBases& symmetry_bases();

// Pure state of the form (|0>+|1>)_0/2 x (|00> + |->); equal weight in both sectors.
Vector mixed_sector_state();

} // namespace symldf
