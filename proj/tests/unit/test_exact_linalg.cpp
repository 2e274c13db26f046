#include <gtest/gtest.h>

#include "loco/dense_matrix.hpp"
#include "loco/exact_matrix.hpp"
#include "loco/errors.hpp"
#include "oracles.hpp"

using namespace loco;

namespace {

const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);

ExactMatrix dense(FieldSpec f, std::vector<Vector> rows) {
    return ExactMatrix::from_rows(f, rows.empty() ? 0 : rows.front().size(), rows);
}

std::vector<Vector> random_rows(oracle::Gen& g, std::size_t r, std::size_t c, int spread) {
    std::vector<Vector> rows(r, Vector(c));
    for (auto& row : rows)
        for (auto& x : row) x = g.uniform(0, 2) == 0 ? mpq_class(g.uniform(-spread, spread), g.coin() ? 1 : 3) : mpq_class(0);
    for (auto& row : rows)
        for (auto& x : row) x.canonicalize();
    return rows;
}

}  // namespace

TEST(ExactLinalg, RankExamples) {
    EXPECT_EQ(rank(ExactMatrix::identity(QQ, 2)), 2u);
    EXPECT_EQ(rank(dense(QQ, {{1, 2}, {2, 4}})), 1u);
    EXPECT_EQ(rank(dense(F2, {{1, 1}, {1, 1}})), 1u);
    EXPECT_EQ(rank(dense(F2, {{1, 1}, {1, 3}})), 1u);  // 3 = 1 mod 2
}

TEST(ExactLinalg, KernelExamples) {
    EXPECT_TRUE(kernel_basis(ExactMatrix::identity(QQ, 3)).empty());
    EXPECT_EQ(kernel_basis(ExactMatrix(QQ, 2, 3)).size(), 3u);
    auto k = kernel_basis(dense(QQ, {{1, 2}, {2, 4}}));
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0][0], -2 * k[0][1]);
    EXPECT_NE(sgn(k[0][1]), 0);
}

TEST(ExactLinalg, HomologyExamples) {
    EXPECT_EQ(homology_dim(ExactMatrix(QQ, 3, 0), ExactMatrix(QQ, 0, 3)), 3u);
    EXPECT_EQ(homology_dim(ExactMatrix::identity(QQ, 2), ExactMatrix(QQ, 0, 2)), 0u);
    EXPECT_EQ(homology_dim(dense(QQ, {{1}, {1}}), dense(QQ, {{1, -1}})), 0u);
    EXPECT_THROW(homology_dim(dense(QQ, {{1}, {1}}), dense(QQ, {{1, 1}})), CompositionNotZero);
    EXPECT_THROW(homology_dim(ExactMatrix(QQ, 2, 1), ExactMatrix(QQ, 1, 3)), DimensionMismatch);
}

TEST(ExactLinalg, FieldNormalization) {
    EXPECT_EQ(F2.normalize(mpq_class(3)), 1);
    EXPECT_EQ(FieldSpec::prime(3).normalize(mpq_class(1, 2)), 2);
    EXPECT_THROW(FieldSpec::prime(4), std::invalid_argument);
    EXPECT_EQ(parse_field("GF(5)").characteristic(), 5u);
    EXPECT_EQ(parse_field("QQ").kind(), FieldSpec::Kind::Rationals);
}

// Rank agrees with a plain Gaussian elimination; kernels have the right size
// and are killed; rank(A) = rank(A^T).
TEST(ExactLinalgProperty, RankKernelAgainstReference) {
    oracle::Gen g(11);
    for (int trial = 0; trial < 120; ++trial) {
        FieldSpec f = trial % 3 == 0 ? QQ : FieldSpec::prime(trial % 3 == 1 ? 2 : 7);
        std::size_t r = static_cast<std::size_t>(g.uniform(1, 9)), c = static_cast<std::size_t>(g.uniform(1, 9));
        auto rows = random_rows(g, r, c, 3);
        ExactMatrix m = dense(f, rows);
        std::size_t expected = oracle::rank(rows, oracle::characteristic(f));
        ASSERT_EQ(rank(m), expected) << "trial " << trial;
        ASSERT_EQ(rank(m.transpose()), expected);
        auto ker = kernel_basis(m);
        ASSERT_EQ(ker.size(), c - expected);
        for (const auto& v : ker)
            for (const auto& x : m.apply(v)) ASSERT_EQ(sgn(x), 0);
    }
}

TEST(ExactLinalgProperty, SolveFindsPreimages) {
    oracle::Gen g(12);
    for (int trial = 0; trial < 80; ++trial) {
        FieldSpec f = trial % 2 ? QQ : FieldSpec::prime(5);
        auto rows = random_rows(g, static_cast<std::size_t>(g.uniform(1, 7)), static_cast<std::size_t>(g.uniform(1, 7)), 4);
        ExactMatrix m = dense(f, rows);
        Vector x(m.cols());
        for (auto& v : x) v = g.uniform(-3, 3);
        Vector b = m.apply(x);
        auto sol = solve(m, b);
        ASSERT_TRUE(sol.has_value());
        ASSERT_EQ(m.apply(*sol), b);
    }
}

TEST(ExactLinalgProperty, DensePolicyMatchesSparse) {
    oracle::Gen g(13);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = static_cast<std::size_t>(g.uniform(1, 70)), c = static_cast<std::size_t>(g.uniform(1, 70));
        PrimeField f{2};
        DenseMatrix<PrimeField> d(f, r, c);
        std::vector<Vector> rows(r, Vector(c, 0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (g.uniform(0, 3) == 0) {
                    d(i, j) = 1;
                    rows[i][j] = 1;
                }
        ASSERT_EQ(rank(d), oracle::rank(rows, 2));
        auto keep = greedy_row_basis(d);
        ASSERT_EQ(keep.size(), oracle::rank(rows, 2));
    }
}

// Homology of a random two-step complex A -> B -> C built as d_out = K^T-ish
// product: dim H = dim B - rank d_in - rank d_out.
TEST(ExactLinalgProperty, HomologyCountsMatch) {
    oracle::Gen g(14);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = random_rows(g, 5, 3, 2);  // d_in: 3 -> 5
        ExactMatrix d_in = dense(QQ, a);
        // d_out kills the image of d_in: rows from the left kernel.
        auto left = kernel_basis(d_in.transpose());
        std::vector<Vector> out_rows(left.begin(), left.begin() + static_cast<long>(std::min<std::size_t>(left.size(), 2)));
        if (out_rows.empty()) continue;
        ExactMatrix d_out = dense(QQ, out_rows);
        std::size_t expected = 5 - oracle::rank(a) - oracle::rank(out_rows);
        ASSERT_EQ(homology_dim(d_in, d_out), expected);
    }
}
