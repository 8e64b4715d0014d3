// symmetry.hpp: exchange-symmetry superoperators and the four-block split of
// Fock-Liouville space into B_SS, B_AA, B_SA, B_AS.

#pragma once

#include "symldf/model.hpp"
#include "symldf/superoperator.hpp"

#include <array>

namespace symldf {

enum class Block { SS, AA, SA, AS };

inline constexpr std::array<Block, 4> kAllBlocks{Block::SS, Block::AA, Block::SA, Block::AS};

const char* to_string(Block b);

// Symmetry sector of a diagonal block, or the whole space.
enum class Sector { S, A, full };

const char* to_string(Sector s);

Block diagonal_block(Sector s);

// Orthonormal Hermitian-operator basis of span{|x><y| : x, y in states}, vectorized
// as columns. Diagonal elements first, then (|i><j| + |j><i|)/sqrt2 and
// i(|i><j| - |j><i|)/sqrt2 for i < j. A Hermiticity-preserving superoperator is
// real in this basis.
Matrix hermitian_operator_basis(const std::vector<Vector>& states);

struct SymmetryBlockMap {
    // Columns are orthonormal vectorized operators. SS and AA use the Hermitian
    // basis of their sector; SA and AS use the outer products |S_i><A_j| and
    // |A_i><S_j|.
    std::array<Matrix, 4> basis;

    const Matrix& operator[](Block b) const { return basis[static_cast<std::size_t>(b)]; }
    Eigen::Index dim(Block b) const { return (*this)[b].cols(); }
};

SymmetryBlockMap block_decompose();

// Process-wide copy of block_decompose(); the split is parameter independent.
const SymmetryBlockMap& block_map();

// Full-space Hermitian basis (64 columns); realifies any Lindblad generator.
const Matrix& full_hermitian_basis();

struct SymmetrySuperops {
    SuperOperator left;  // rho -> pi rho
    SuperOperator right; // rho -> rho pi^dagger
};

SymmetrySuperops build_symmetry_superops();

// max |(1 - P_b) M v| over the block's basis vectors v.
double block_leakage(const Matrix& superop, Block b);

// M[a,b] = <<v_a| superop |v_b>> over the block basis. Throws BrokenSymmetry if
// the block is not invariant to within `tolerance`.
Matrix restrict_superop(const Matrix& superop, Block b, double tolerance = 1e-10);

// Real part of restrict_superop for SS/AA, where the Hermitian basis makes a
// Lindblad generator (tilted or not) real.
RealMatrix restrict_superop_real(const Matrix& superop, Block b, double tolerance = 1e-10);

struct SectorOverlap {
    double weight_A{0.0};
    double weight_S{0.0};
    bool has_A{false};
    bool has_S{false};
};

// weight_A = Tr(P_- rho); has_x iff weight_x > threshold.
SectorOverlap sector_overlap(const Matrix& rho, double threshold = 1e-10);

// Overlap flags set directly (both sectors present, only S, only A).
SectorOverlap overlap_both();
SectorOverlap overlap_only(Sector s);

} // namespace symldf
