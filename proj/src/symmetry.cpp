#include "symldf/symmetry.hpp"

#include "symldf/errors.hpp"

#include <cmath>
#include <string>

namespace symldf {

const char* to_string(Block b) {
    switch (b) {
    case Block::SS: return "SS";
    case Block::AA: return "AA";
    case Block::SA: return "SA";
    case Block::AS: return "AS";
    }
    return "?";
}

const char* to_string(Sector s) {
    switch (s) {
    case Sector::S: return "S";
    case Sector::A: return "A";
    case Sector::full: return "full";
    }
    return "?";
}

Block diagonal_block(Sector s) {
    switch (s) {
    case Sector::S: return Block::SS;
    case Sector::A: return Block::AA;
    case Sector::full: break;
    }
    throw InvalidParameter("the full space is not a diagonal symmetry block");
}

Matrix hermitian_operator_basis(const std::vector<Vector>& states) {
    const auto k = static_cast<Eigen::Index>(states.size());
    Matrix out(kLiouvilleDim, k * k);
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
        out.col(col++) = vectorize(states[i] * states[i].adjoint());
    }
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i + 1; j < k; ++j) {
            const Matrix ij = states[i] * states[j].adjoint();
            const Matrix ji = states[j] * states[i].adjoint();
            out.col(col++) = vectorize(r * (ij + ji));
            out.col(col++) = vectorize(kI * r * (ij - ji));
        }
    }
    return out;
}

namespace {

Matrix outer_product_basis(const std::vector<Vector>& left, const std::vector<Vector>& right) {
    Matrix out(kLiouvilleDim, static_cast<Eigen::Index>(left.size() * right.size()));
    Eigen::Index col = 0;
    for (const auto& x : left) {
        for (const auto& y : right) {
            out.col(col++) = vectorize(x * y.adjoint());
        }
    }
    return out;
}

} // namespace

SymmetryBlockMap block_decompose() {
    const auto& sb = symmetry_bases();
    const std::vector<Vector> sym(sb.sym.begin(), sb.sym.end());
    const std::vector<Vector> anti(sb.antisym.begin(), sb.antisym.end());
    SymmetryBlockMap map;
    map.basis[static_cast<std::size_t>(Block::SS)] = hermitian_operator_basis(sym);
    map.basis[static_cast<std::size_t>(Block::AA)] = hermitian_operator_basis(anti);
    map.basis[static_cast<std::size_t>(Block::SA)] = outer_product_basis(sym, anti);
    map.basis[static_cast<std::size_t>(Block::AS)] = outer_product_basis(anti, sym);
    return map;
}

const SymmetryBlockMap& block_map() {
    static const SymmetryBlockMap map = block_decompose();
    return map;
}

const Matrix& full_hermitian_basis() {
    static const Matrix basis = [] {
        std::vector<Vector> states;
        for (Eigen::Index i = 0; i < kHilbertDim; ++i) {
            states.push_back(Vector::Unit(kHilbertDim, i));
        }
        return hermitian_operator_basis(states);
    }();
    return basis;
}

SymmetrySuperops build_symmetry_superops() {
    const Matrix& pi = symmetry_bases().exchange;
    return {SuperOperator{left_multiplication(pi), std::nullopt},
            SuperOperator{right_multiplication(pi.adjoint()), std::nullopt}};
}

double block_leakage(const Matrix& superop, Block b) {
    const Matrix& v = block_map()[b];
    const Matrix image = superop * v;
    const Matrix inside = v * (v.adjoint() * image);
    return max_abs(Matrix(image - inside));
}

Matrix restrict_superop(const Matrix& superop, Block b, double tolerance) {
    if (superop.rows() != kLiouvilleDim || superop.cols() != kLiouvilleDim) {
        throw DimensionMismatch("restrict_superop expects a 64x64 superoperator");
    }
    const double leak = block_leakage(superop, b);
    if (leak > tolerance) {
        throw BrokenSymmetry(std::string("block ") + to_string(b) +
                             " is not invariant: leakage " + std::to_string(leak));
    }
    const Matrix& v = block_map()[b];
    return v.adjoint() * superop * v;
}

RealMatrix restrict_superop_real(const Matrix& superop, Block b, double tolerance) {
    if (b != Block::SS && b != Block::AA) {
        throw InvalidParameter("real restriction is only defined for the diagonal blocks");
    }
    return restrict_superop(superop, b, tolerance).real();
}

SectorOverlap sector_overlap(const Matrix& rho, double threshold) {
    if (rho.rows() != kHilbertDim || rho.cols() != kHilbertDim) {
        throw DimensionMismatch("sector_overlap expects an 8x8 density matrix");
    }
    SectorOverlap o;
    o.weight_A = (symmetry_bases().antisym_projector * rho).trace().real();
    o.weight_S = 1.0 - o.weight_A;
    o.has_A = o.weight_A > threshold;
    o.has_S = o.weight_S > threshold;
    return o;
}

SectorOverlap overlap_both() { return {0.5, 0.5, true, true}; }

SectorOverlap overlap_only(Sector s) {
    if (s == Sector::S) return {0.0, 1.0, false, true};
    if (s == Sector::A) return {1.0, 0.0, true, false};
    throw InvalidParameter("overlap_only expects S or A");
}

} // namespace symldf
