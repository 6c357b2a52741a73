// Copyright 2026 The ipqp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ipqp/errors.hpp"
#include "ipqp/explicit_ipm.hpp"
#include "ipqp/implicit_ipm.hpp"
#include "ipqp/linalg/block_jacobi.hpp"
#include "ipqp/linalg/dense_eigen.hpp"
#include "ipqp/linalg/ldlt.hpp"
#include "ipqp/linalg/minres.hpp"
#include "ipqp/linalg/ordering.hpp"
#include "ipqp/linalg/sparse_symmetric.hpp"
#include "ipqp/qps_io.hpp"
#include "test_support.hpp"

namespace ipqp::linalg
{
namespace
{

using Sym = SparseSymmetric<double>;

Sym from_dense(const Eigen::MatrixXd& M, std::vector<int> signs)
{
    return Sym(Eigen::MatrixXd(M.triangularView<Eigen::Lower>()).sparseView(0.0, 0.0), std::move(signs));
}

Sym from_dense(const Eigen::MatrixXd& M)
{
    return from_dense(M, std::vector<int>(static_cast<std::size_t>(M.rows()), 1));
}

struct QuasiDefinite
{
    Sym matrix;
    int n1 = 0;
    int n2 = 0;
};

// [[H, B'], [B, -G]] with H, G symmetric positive definite and about 30%
// of the off-diagonal entries of each block nonzero.
QuasiDefinite random_quasi_definite(std::mt19937& rng, int size)
{
    const int n1 = (size + 1) / 2;
    const int n2 = size - n1;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::bernoulli_distribution keep(0.3);
    auto sparse_random = [&](int r, int c) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(r, c);
        for (int j = 0; j < c; ++j) {
            for (int i = 0; i < r; ++i) {
                if (keep(rng)) {
                    M(i, j) = u(rng);
                }
            }
        }
        return M;
    };
    const Eigen::MatrixXd R1 = sparse_random(n1, n1);
    const Eigen::MatrixXd R2 = sparse_random(n2, n2);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(size, size);
    M.topLeftCorner(n1, n1) = R1.transpose() * R1 + Eigen::MatrixXd::Identity(n1, n1);
    M.bottomRightCorner(n2, n2) = -(R2.transpose() * R2 + Eigen::MatrixXd::Identity(n2, n2));
    const Eigen::MatrixXd B = sparse_random(n2, n1);
    M.bottomLeftCorner(n2, n1) = B;
    M.topRightCorner(n1, n2) = B.transpose();
    std::vector<int> signs(static_cast<std::size_t>(size), 1);
    std::fill(signs.begin() + n1, signs.end(), -1);
    return {from_dense(M, signs), n1, n2};
}

template <typename T>
double rel_residual(const Sym& M, const VectorT<T>& x, const Eigen::VectorXd& b)
{
    const Eigen::VectorXd r = M.multiply(x.template cast<double>()) - b;
    return r.lpNorm<Eigen::Infinity>() / b.lpNorm<Eigen::Infinity>();
}

TEST(Ldlt, DiagonalIndefinite)
{
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
    D(0, 0) = 2.0;
    D(1, 1) = -3.0;
    const Sym M = from_dense(D);
    const Factorization<double> F = ldlt_factor(M, 0.0);
    EXPECT_EQ(F.inertia(), (Inertia{1, 1, 0}));
    EXPECT_EQ(F.two_by_two_pivots(), 0);
    EXPECT_EQ(F.regularized_pivots(), 0);
    std::vector<double> pivots;
    for (const auto& blk : F.blocks()) {
        EXPECT_EQ(blk.r, -1);
        for (const auto& [i, l] : blk.lk) {
            EXPECT_EQ(l, 0.0) << "off-diagonal L entry at " << i;
        }
        pivots.push_back(blk.d11);
    }
    std::sort(pivots.begin(), pivots.end());
    EXPECT_EQ(pivots, (std::vector<double>{-3.0, 2.0}));
    Eigen::VectorXd rhs(2);
    rhs << 4.0, 6.0;
    const Eigen::VectorXd x = F.solve(rhs);
    EXPECT_DOUBLE_EQ(x[0], 2.0);
    EXPECT_DOUBLE_EQ(x[1], -2.0);
}

TEST(Ldlt, OffDiagonalPairNeedsTwoByTwoPivot)
{
    Eigen::MatrixXd S(2, 2);
    S << 0.0, 1.0, 1.0, 0.0;
    const Factorization<double> F = ldlt_factor(from_dense(S), 0.0);
    EXPECT_EQ(F.two_by_two_pivots(), 1);
    EXPECT_EQ(F.inertia(), (Inertia{1, 1, 0}));
    EXPECT_LE((F.reconstruct() - S).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Ldlt, IdentitySolveReturnsRhs)
{
    const Sym M = from_dense(Eigen::MatrixXd::Identity(4, 4));
    Eigen::VectorXd rhs(4);
    rhs << 1.0, -2.0, 3.5, 0.25;
    EXPECT_EQ(ldlt_solve(ldlt_factor(M, 0.0), rhs), rhs);
}

TEST(Ldlt, ExplicitMatrixAtInteriorPointIsQuasiDefinite)
{
    const QpProblem qp = builtin_problem("synthetic2d");
    const ExplicitIterate z{Vector::Zero(2), Vector::Ones(4), Vector(0), Vector::Ones(4)};
    const KktSystem kkt = assemble_explicit(qp, z, 1.0);
    const Factorization<double> F = ldlt_factor(kkt.matrix, default_static_reg(kkt.matrix));
    EXPECT_EQ(F.inertia(), (Inertia{2, 4, 0}));
}

TEST(Ldlt, SingularWithoutRegularizationThrowsWithInertia)
{
    Eigen::MatrixXd S(3, 3);
    S << 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 2.0;
    try {
        ldlt_factor(from_dense(S), 0.0);
        FAIL() << "expected SingularMatrix";
    } catch (const SingularMatrix& e) {
        EXPECT_EQ(e.inertia().total(), 3);
        EXPECT_GE(e.inertia().zero, 1);
    }
}

TEST(Ldlt, RegularizationIsSignedAndRecorded)
{
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(3, 3);
    S(0, 0) = 1.0;
    const Factorization<double> F = ldlt_factor(from_dense(S, {1, 1, -1}), 1e-8);
    EXPECT_EQ(F.regularized_pivots(), 2);
    EXPECT_EQ(F.regularization(), 1e-8);
    EXPECT_EQ(F.inertia(), (Inertia{2, 1, 0}));
}

TEST(Ldlt, NonFiniteInputsAreRejected)
{
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2, 2);
    S(1, 0) = S(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(ldlt_factor(from_dense(S), 0.0), NumericalError);
    const Factorization<double> F = ldlt_factor(from_dense(Eigen::MatrixXd::Identity(2, 2)), 0.0);
    Eigen::VectorXd rhs(2);
    rhs << 1.0, std::numeric_limits<double>::infinity();
    EXPECT_THROW(F.solve(rhs), NumericalError);
}

TEST(Ldlt, PivotsOnLargerDiagonalWhenCandidateIsSmall)
{
    // Column 0 has a tiny diagonal and a large off-diagonal against a large
    // diagonal entry: the test picks the 1x1 pivot on row 1.
    Eigen::MatrixXd S(3, 3);
    S << 1e-3, 1.0, 0.0, 1.0, 10.0, 0.5, 0.0, 0.5, -2.0;
    const Factorization<double> F = ldlt_factor(from_dense(S), 0.0, std::vector<int>{0, 1, 2});
    EXPECT_EQ(F.two_by_two_pivots(), 0);
    EXPECT_EQ(F.blocks().front().k, 1);
    EXPECT_LE((F.reconstruct() - S).cwiseAbs().maxCoeff(), 1e-14);
    Eigen::VectorXd x_true(3);
    x_true << 1.0, -1.0, 2.0;
    const Eigen::VectorXd x = F.solve(S * x_true);
    EXPECT_LE((x - x_true).cwiseAbs().maxCoeff(), 1e-12);
}

class LdltRoundTrip : public ::testing::TestWithParam<int>
{
};

TEST_P(LdltRoundTrip, DoublePrecision)
{
    std::mt19937 rng(100 + GetParam());
    for (int trial = 0; trial < 5; ++trial) {
        const QuasiDefinite q = random_quasi_definite(rng, GetParam());
        const Eigen::VectorXd x_true = testing::random_vector(rng, GetParam());
        const Eigen::VectorXd b = q.matrix.multiply(x_true);
        const Factorization<double> F = ldlt_factor(q.matrix, 0.0);
        EXPECT_EQ(F.inertia(), (Inertia{q.n1, q.n2, 0}));
        EXPECT_EQ(F.inertia().total(), GetParam());
        const Eigen::VectorXd x = F.solve(b);
        EXPECT_LE(rel_residual<double>(q.matrix, x, b), 1e-9);
        EXPECT_LE((x - x_true).lpNorm<Eigen::Infinity>() / x_true.lpNorm<Eigen::Infinity>(), 1e-9);
        const Eigen::MatrixXd dense = q.matrix.to_dense();
        EXPECT_LE((F.reconstruct() - dense).cwiseAbs().maxCoeff(), 1e-12 * dense.cwiseAbs().maxCoeff());
    }
}

TEST_P(LdltRoundTrip, SinglePrecision)
{
    std::mt19937 rng(200 + GetParam());
    for (int trial = 0; trial < 5; ++trial) {
        const QuasiDefinite q = random_quasi_definite(rng, GetParam());
        const Eigen::VectorXd x_true = testing::random_vector(rng, GetParam());
        const Eigen::VectorXd b = q.matrix.multiply(x_true);
        const SparseSymmetric<float> Mf = q.matrix.cast<float>();
        const Factorization<float> F = ldlt_factor(Mf, 0.0f);
        EXPECT_EQ(F.inertia(), (Inertia{q.n1, q.n2, 0}));
        const VectorT<float> x = F.solve(b.cast<float>());
        EXPECT_LE(rel_residual<float>(q.matrix, x, b), 1e-4);
    }
}

TEST_P(LdltRoundTrip, PrecisionsAgree)
{
    std::mt19937 rng(300 + GetParam());
    const QuasiDefinite q = random_quasi_definite(rng, GetParam());
    const Eigen::VectorXd b = testing::random_vector(rng, GetParam());
    const Eigen::VectorXd xd = ldlt_factor(q.matrix, 0.0).solve(b);
    const VectorT<float> xf = ldlt_factor(q.matrix.cast<float>(), 0.0f).solve(b.cast<float>());
    EXPECT_LE((xf.cast<double>() - xd).lpNorm<Eigen::Infinity>() / xd.lpNorm<Eigen::Infinity>(), 1e-4);
}

TEST_P(LdltRoundTrip, MinresMatchesDirect)
{
    std::mt19937 rng(400 + GetParam());
    for (int trial = 0; trial < 3; ++trial) {
        const QuasiDefinite q = random_quasi_definite(rng, GetParam());
        const Eigen::VectorXd b = testing::random_vector(rng, GetParam());
        const Eigen::VectorXd xd = ldlt_factor(q.matrix, 0.0).solve(b);
        const BlockJacobi<double> P(q.matrix, {q.n1, q.n2});
        MinresOptions opts;
        opts.rtol = 1e-13;
        opts.atol = 0.0;
        const MinresResult<double> r = minres(as_operator(q.matrix), b, P.as_operator(), opts);
        EXPECT_TRUE(r.report.converged);
        EXPECT_LE((r.x - xd).lpNorm<Eigen::Infinity>() / xd.lpNorm<Eigen::Infinity>(), 1e-8);
    }
}

INSTANTIATE_TEST_SUITE_P(Sizes, LdltRoundTrip, ::testing::Values(5, 50, 200));

TEST(Ordering, ArrowMatrixEliminatesHubLast)
{
    const int n = 12;
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n, n) * 4.0;
    for (int i = 1; i < n; ++i) {
        S(i, 0) = S(0, i) = 1.0;
    }
    const Sym M = from_dense(S);
    const std::vector<int> order = amd_order(pattern_of(M));
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> iota(n);
    std::iota(iota.begin(), iota.end(), 0);
    EXPECT_EQ(sorted, iota);
    EXPECT_EQ(order.back(), 0);

    std::vector<int> natural(n);
    std::iota(natural.begin(), natural.end(), 0);
    const auto fill_amd = ldlt_factor(M, 0.0, order).factor_nonzeros();
    const auto fill_natural = ldlt_factor(M, 0.0, natural).factor_nonzeros();
    EXPECT_LT(fill_amd, fill_natural);
}

TEST(Ordering, CacheRecomputesOnlyOnPatternChange)
{
    std::mt19937 rng(1);
    const QuasiDefinite a = random_quasi_definite(rng, 20);
    OrderingCache cache;
    const std::vector<int> first = cache.order(pattern_of(a.matrix));
    Sym changed_values = a.matrix;
    changed_values.set_diagonal(3, 17.0);
    EXPECT_EQ(cache.order(pattern_of(changed_values)), first);
    EXPECT_EQ(cache.computations(), 1);
    const QuasiDefinite b = random_quasi_definite(rng, 21);
    cache.order(pattern_of(b.matrix));
    EXPECT_EQ(cache.computations(), 2);
}

TEST(Minres, IdentityConvergesInOneIteration)
{
    const Sym M = from_dense(Eigen::MatrixXd::Identity(5, 5));
    Eigen::VectorXd b(5);
    b << 1.0, 2.0, -3.0, 0.5, 7.0;
    const MinresResult<double> r = minres(as_operator(M), b, LinearOperator<double>{});
    EXPECT_TRUE(r.report.converged);
    EXPECT_EQ(r.report.iterations, 1);
    EXPECT_LE((r.x - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Minres, DistinctEigenvaluesBoundIterations)
{
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(10, 10);
    for (int i = 0; i < 10; ++i) {
        D(i, i) = i + 1.0;
    }
    const Sym M = from_dense(D);
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(10);
    const MinresResult<double> r = minres(as_operator(M), b, LinearOperator<double>{});
    EXPECT_TRUE(r.report.converged);
    EXPECT_LE(r.report.iterations, 10);
    for (int i = 0; i < 10; ++i) {
        EXPECT_NEAR(r.x[i], 1.0 / (i + 1.0), 1e-9);
    }
}

TEST(Minres, ResidualHistoryIsNonIncreasing)
{
    std::mt19937 rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        const QuasiDefinite q = random_quasi_definite(rng, 60);
        const Eigen::VectorXd b = testing::random_vector(rng, 60);
        for (bool precondition : {false, true}) {
            const BlockJacobi<double> P(q.matrix, {q.n1, q.n2});
            MinresOptions opts;
            opts.rtol = 1e-12;
            opts.atol = 0.0;
            const MinresResult<double> r =
                minres(as_operator(q.matrix), b, precondition ? P.as_operator() : LinearOperator<double>{}, opts);
            const auto& h = r.report.residual_history;
            ASSERT_FALSE(h.empty());
            for (std::size_t i = 1; i < h.size(); ++i) {
                EXPECT_LE(h[i], h[i - 1]);
            }
            if (r.report.converged) {
                EXPECT_LE(r.report.relative_residual, opts.rtol);
            }
        }
    }
}

TEST(Minres, NonFiniteRhsReportsIteration)
{
    const Sym M = from_dense(Eigen::MatrixXd::Identity(3, 3));
    Eigen::VectorXd b = Eigen::VectorXd::Ones(3);
    b[1] = std::numeric_limits<double>::quiet_NaN();
    try {
        minres(as_operator(M), b, LinearOperator<double>{});
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("iteration 0"), std::string::npos) << e.what();
    }
}

TEST(Minres, ImplicitMatrixAtFirstIterateWithBlockJacobi)
{
    const QpProblem qp = builtin_problem("synthetic2d");
    const ImplicitIterate z = implicit_initial_point(qp);
    const KktSystem kkt = assemble_implicit(qp, z, 1.0);
    const BlockJacobi<double> P(kkt.matrix, kkt.partition());
    const MinresResult<double> r = minres(as_operator(kkt.matrix), kkt.rhs, P.as_operator());
    EXPECT_TRUE(r.report.converged);
    const Eigen::VectorXd xd = ldlt_factor(kkt.matrix, 0.0).solve(kkt.rhs);
    EXPECT_LE((r.x - xd).lpNorm<Eigen::Infinity>() / xd.lpNorm<Eigen::Infinity>(), 1e-8);
}

TEST(Minres, SinglePrecisionSolvesWellConditionedSystem)
{
    std::mt19937 rng(5);
    const QuasiDefinite q = random_quasi_definite(rng, 40);
    const SparseSymmetric<float> Mf = q.matrix.cast<float>();
    const Eigen::VectorXd b = testing::random_vector(rng, 40);
    MinresOptions opts;
    opts.rtol = 1e-6;
    opts.atol = 0.0;
    const MinresResult<float> r = minres(as_operator(Mf), VectorT<float>(b.cast<float>()),
                                         BlockJacobi<float>(Mf, {q.n1, q.n2}).as_operator(), opts);
    EXPECT_TRUE(r.report.converged);
    EXPECT_LE(rel_residual<float>(q.matrix, r.x, b), 1e-4);
}

TEST(BlockJacobi, DiagonalWithUnitBlocksIsExactInverse)
{
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3, 3);
    D(0, 0) = 2.0;
    D(1, 1) = 4.0;
    D(2, 2) = 5.0;
    const Sym M = from_dense(D);
    const BlockJacobi<double> P(M, {1, 1, 1});
    const Eigen::MatrixXd inv = P.to_dense();
    EXPECT_DOUBLE_EQ(inv(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(inv(1, 1), 0.25);
    EXPECT_DOUBLE_EQ(inv(2, 2), 0.2);
    EXPECT_TRUE(P.warnings().empty());
    const MinresResult<double> r = minres(as_operator(M), Eigen::VectorXd(Eigen::VectorXd::Ones(3)), P.as_operator());
    EXPECT_TRUE(r.report.converged);
    EXPECT_EQ(r.report.iterations, 1);
}

TEST(BlockJacobi, IndefiniteBlocksUseAbsoluteValue)
{
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
    D(0, 0) = 2.0;
    D(1, 1) = -4.0;
    const BlockJacobi<double> P(from_dense(D), {1, 1});
    EXPECT_DOUBLE_EQ(P.to_dense()(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(P.to_dense()(1, 1), 0.25);
}

TEST(BlockJacobi, SingularBlockReplacedByIdentity)
{
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
    D(0, 0) = 4.0;
    const BlockJacobi<double> P(from_dense(D), {1, 1});
    EXPECT_DOUBLE_EQ(P.to_dense()(0, 0), 0.25);
    EXPECT_DOUBLE_EQ(P.to_dense()(1, 1), 1.0);
    EXPECT_EQ(P.warnings().size(), 1u);
}

TEST(BlockJacobi, PartitionMustCoverMatrix)
{
    const Sym M = from_dense(Eigen::MatrixXd::Identity(3, 3));
    EXPECT_THROW(BlockJacobi<double>(M, {1, 1}), InvalidInput);
}

TEST(BlockJacobi, DenseBlockInverseOfAbsoluteValue)
{
    std::mt19937 rng(3);
    const QuasiDefinite q = random_quasi_definite(rng, 10);
    const BlockJacobi<double> P(q.matrix, {q.n1, q.n2});
    const Eigen::MatrixXd dense = q.matrix.to_dense();
    const Eigen::MatrixXd H = dense.topLeftCorner(q.n1, q.n1);
    const Eigen::MatrixXd G = -dense.bottomRightCorner(q.n2, q.n2);
    const Eigen::MatrixXd Pd = P.to_dense();
    EXPECT_LE((Pd.topLeftCorner(q.n1, q.n1) * H - Eigen::MatrixXd::Identity(q.n1, q.n1)).cwiseAbs().maxCoeff(),
              1e-10);
    EXPECT_LE((Pd.bottomRightCorner(q.n2, q.n2) * G - Eigen::MatrixXd::Identity(q.n2, q.n2)).cwiseAbs().maxCoeff(),
              1e-10);
    EXPECT_EQ(Pd.topRightCorner(q.n1, q.n2).cwiseAbs().maxCoeff(), 0.0);
}

TEST(EigenSolver, DiagonalExample)
{
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3, 3);
    D(0, 0) = 3.0;
    D(1, 1) = 1.0;
    D(2, 2) = 2.0;
    const Eigen::VectorXd e = dense_symmetric_eigenvalues(D);
    EXPECT_DOUBLE_EQ(e[0], 1.0);
    EXPECT_DOUBLE_EQ(e[1], 2.0);
    EXPECT_DOUBLE_EQ(e[2], 3.0);
}

TEST(EigenSolver, SwapExample)
{
    Eigen::MatrixXd S(2, 2);
    S << 0.0, 1.0, 1.0, 0.0;
    const Eigen::VectorXd e = dense_symmetric_eigenvalues(S);
    EXPECT_NEAR(e[0], -1.0, 1e-15);
    EXPECT_NEAR(e[1], 1.0, 1e-15);
}

TEST(EigenSolver, TraceAndDeterminantSign)
{
    std::mt19937 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial;
        const Eigen::MatrixXd R = testing::random_matrix(rng, n, n);
        const Eigen::MatrixXd S = 0.5 * (R + R.transpose());
        const SymmetricEigen eig = jacobi_eigen(S, true);
        const double scale = S.cwiseAbs().maxCoeff() * n;
        EXPECT_NEAR(eig.values.sum(), S.trace(), 1e-9 * scale);
        // Determinant sign from an independent LU against the eigenvalue
        // product and against the LDL' inertia.
        const double det = S.partialPivLu().determinant();
        const int negatives = static_cast<int>((eig.values.array() < 0.0).count());
        EXPECT_EQ(det < 0.0, negatives % 2 == 1);
        const Factorization<double> F = ldlt_factor(from_dense(S), 0.0);
        EXPECT_EQ(F.inertia().negative, negatives);
        EXPECT_EQ(F.inertia().positive, n - negatives);
        EXPECT_LE((S * eig.vectors - eig.vectors * eig.values.asDiagonal()).cwiseAbs().maxCoeff(), 1e-9 * scale);
        EXPECT_TRUE(std::is_sorted(eig.values.data(), eig.values.data() + n));
    }
}

TEST(EigenSolver, CapExceededThrows)
{
    EXPECT_THROW(dense_symmetric_eigenvalues(Eigen::MatrixXd::Identity(6, 6), 5), InvalidInput);
}

TEST(SparseSymmetric, MultiplyMatchesDense)
{
    std::mt19937 rng(2);
    const QuasiDefinite q = random_quasi_definite(rng, 30);
    const Eigen::VectorXd x = testing::random_vector(rng, 30);
    EXPECT_LE((q.matrix.multiply(x) - q.matrix.to_dense() * x).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_THROW(q.matrix.multiply(Eigen::VectorXd::Ones(29)), InvalidInput);
}

TEST(SparseSymmetric, DiagonalIsStructurallyPresent)
{
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(3, 3);
    S(2, 0) = S(0, 2) = 1.0;
    Sym M = from_dense(S);
    const Pattern before = pattern_of(M);
    M.set_diagonal(1, -5.0);
    EXPECT_EQ(M.diagonal(1), -5.0);
    EXPECT_EQ(pattern_of(M), before);
}

} // namespace
} // namespace ipqp::linalg
