#include "symldf/errors.hpp"
#include "symldf/liouville.hpp"
#include "symldf/symmetry.hpp"

#include <doctest.h>

using namespace symldf;

TEST_CASE("block bases are orthonormal and span the space") {
    const SymmetryBlockMap& map = block_map();
    Matrix all(kLiouvilleDim, kLiouvilleDim);
    Eigen::Index col = 0;
    for (Block b : kAllBlocks) {
        all.middleCols(col, map.dim(b)) = map[b];
        col += map.dim(b);
    }
    REQUIRE(col == kLiouvilleDim);
    CHECK(max_abs(Matrix(all.adjoint() * all - Matrix::Identity(64, 64))) < 1e-13);
}

TEST_CASE("diagonal block bases are Hermitian operators") {
    const SymmetryBlockMap& map = block_map();
    for (Block b : {Block::SS, Block::AA}) {
        for (Eigen::Index k = 0; k < map.dim(b); ++k) {
            const Matrix op = devectorize(map[b].col(k));
            CHECK(max_abs(Matrix(op - op.adjoint())) < 1e-14);
        }
    }
}

TEST_CASE("generator stays block diagonal without dephasing") {
    const Matrix l = build_tilted_liouvillian(ModelParams{}, {0.9, -0.4}).matrix;
    for (Block b : kAllBlocks) CHECK(block_leakage(l, b) < 1e-12);
}

TEST_CASE("dephasing breaks the block structure") {
    ModelParams p;
    p.gamma_dephase = 0.01;
    const Matrix l = build_liouvillian(p).matrix;
    CHECK(block_leakage(l, Block::SS) > 1e-4);
    CHECK_THROWS_AS(restrict_superop(l, Block::SS), BrokenSymmetry);
}

TEST_CASE("restriction keeps the spectrum") {
    const Matrix l = build_liouvillian(ModelParams{}).matrix;
    const Matrix laa = restrict_superop(l, Block::AA);
    REQUIRE(laa.rows() == 4);
    // the antisymmetric block is a thermal two-level system: rates sum to Gamma(2n+1)
    Eigen::ComplexEigenSolver<Matrix> es(laa);
    double most_negative = 0.0;
    for (Eigen::Index i = 0; i < 4; ++i) most_negative = std::min(most_negative, es.eigenvalues()(i).real());
    const ModelParams p;
    CHECK(most_negative == doctest::Approx(-p.gamma_bath * (2.0 * p.n_bath + 1.0)).epsilon(1e-10));
}

TEST_CASE("sector overlap of initial states") {
    const auto& b = symmetry_bases();
    const Matrix rs = b.sym[1] * b.sym[1].adjoint();
    const Matrix ra = b.antisym[0] * b.antisym[0].adjoint();
    CHECK(sector_overlap(rs).has_S);
    CHECK_FALSE(sector_overlap(rs).has_A);
    CHECK(sector_overlap(ra).has_A);
    CHECK_FALSE(sector_overlap(ra).has_S);
    const Matrix mixed = Matrix::Identity(8, 8) / 8.0;
    CHECK(sector_overlap(mixed).has_S);
    CHECK(sector_overlap(mixed).has_A);
    CHECK(sector_overlap(mixed).weight_A == doctest::Approx(0.25));
}
