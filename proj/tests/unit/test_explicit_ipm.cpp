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
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "ipqp/errors.hpp"
#include "ipqp/explicit_ipm.hpp"
#include "ipqp/qps_io.hpp"
#include "test_support.hpp"

namespace ipqp
{
namespace
{

using testing::random_explicit_iterate;
using testing::random_qp;

SolverConfig explicit_config()
{
    SolverConfig c;
    c.method = Method::explicit_ipm;
    return c;
}

// min 1/2 x^2 s.t. x >= -1.
QpProblem one_dimensional()
{
    return QpProblem(sparse_from_dense(Eigen::MatrixXd::Identity(1, 1)), Vector::Zero(1),
                     sparse_from_dense(Eigen::MatrixXd::Ones(1, 1)), Vector::Constant(1, -1.0), SparseMatrix(0, 1),
                     Vector(0));
}

// Dense uncondensed Newton system in (dx, dlambda, dgamma, ds), solved by LU.
NewtonStep dense_newton_oracle(const QpProblem& qp, const ExplicitIterate& z, double mu)
{
    const int n = qp.n(), m = qp.m(), p = qp.p();
    const int N = n + 2 * m + p;
    const Eigen::MatrixXd Q(qp.Q()), A(qp.A()), C(qp.C());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
    const int ol = n, og = n + m, os = n + m + p;
    K.block(0, 0, n, n) = Q;
    K.block(0, ol, n, m) = -A.transpose();
    K.block(0, og, n, p) = -C.transpose();
    K.block(ol, 0, m, n) = A;
    K.block(ol, os, m, m) = -Eigen::MatrixXd::Identity(m, m);
    K.block(og, 0, p, n) = C;
    K.block(os, ol, m, m) = z.s.asDiagonal();
    K.block(os, os, m, m) = z.lambda.asDiagonal();
    const ResidualVector r = residuals(qp, z, mu);
    Eigen::VectorXd rhs(N);
    rhs << -r.r_x, -r.r_i, -r.r_e, -r.r_comp;
    const Eigen::VectorXd sol = K.fullPivLu().solve(rhs);
    NewtonStep d;
    d.dx = sol.segment(0, n);
    d.dlambda = sol.segment(ol, m);
    d.dgamma = sol.segment(og, p);
    d.ds = sol.segment(os, m);
    return d;
}

TEST(AssembleExplicit, UnitDualsGiveMinusIdentityBlock)
{
    const QpProblem qp = builtin_problem("synthetic2d");
    const ExplicitIterate z{Vector::Zero(2), Vector::Ones(4), Vector(0), Vector::Ones(4)};
    const ExplicitKkt kkt = assemble_explicit(qp, z, 1.0);
    Eigen::MatrixXd A(4, 2);
    A << 1, 1, 0, 1, -1, 0, 0, -1;
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(6, 6);
    E.topLeftCorner(2, 2) = Eigen::MatrixXd::Identity(2, 2);
    E.topRightCorner(2, 4) = -A.transpose();
    E.bottomLeftCorner(4, 2) = -A;
    E.bottomRightCorner(4, 4) = -Eigen::MatrixXd::Identity(4, 4);
    EXPECT_EQ(kkt.matrix.to_dense(), E);
    EXPECT_EQ(kkt.dual_diagonal(), Vector::Ones(4));
    EXPECT_EQ(kkt.formulation, Formulation::explicit_e);
}

TEST(AssembleExplicit, DualDiagonalIsSOverLambda)
{
    std::mt19937 rng(4);
    const QpProblem qp = random_qp(rng, 5, 4, 2);
    const ExplicitIterate z = random_explicit_iterate(rng, qp);
    const ExplicitKkt kkt = assemble_explicit(qp, z, 0.3);
    const Vector expected = z.s.cwiseQuotient(z.lambda);
    EXPECT_LE((kkt.dual_diagonal() - expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(kkt.matrix.to_dense(), kkt.matrix.to_dense().transpose());
}

TEST(AssembleExplicit, UpdateMatchesFreshAssembly)
{
    std::mt19937 rng(5);
    const QpProblem qp = random_qp(rng, 6, 3, 1);
    ExplicitKkt kkt = assemble_explicit(qp, random_explicit_iterate(rng, qp), 1.0);
    const ExplicitIterate z = random_explicit_iterate(rng, qp);
    update_explicit(kkt, qp, z, 0.2);
    const ExplicitKkt fresh = assemble_explicit(qp, z, 0.2);
    EXPECT_EQ(kkt.matrix.to_dense(), fresh.matrix.to_dense());
    EXPECT_EQ(kkt.rhs, fresh.rhs);
}

TEST(AssembleExplicit, RejectsNonInteriorPoint)
{
    const QpProblem qp = builtin_problem("synthetic2d");
    ExplicitIterate z{Vector::Zero(2), Vector::Ones(4), Vector(0), Vector::Ones(4)};
    z.lambda[2] = 0.0;
    EXPECT_THROW(assemble_explicit(qp, z, 1.0), InvalidInput);
    z.lambda[2] = 1.0;
    z.s[0] = -1e-3;
    EXPECT_THROW(assemble_explicit(qp, z, 1.0), InvalidInput);
}

TEST(ExplicitStep, HandSolvedOneDimensionalSystem)
{
    const QpProblem qp = one_dimensional();
    const ExplicitIterate z{Vector::Zero(1), Vector::Ones(1), Vector(0), Vector::Ones(1)};
    const ExplicitStep step = explicit_step(qp, z, 1.0, explicit_config());
    EXPECT_NEAR(step.dz.dx[0], 0.5, 1e-15);
    EXPECT_NEAR(step.dz.dlambda[0], -0.5, 1e-15);
    EXPECT_NEAR(step.dz.ds[0], 0.5, 1e-15);
}

TEST(ExplicitStep, CentralPointIsFixed)
{
    // x (x + 1) = mu with x = 1: mu = 2, lambda = 1, s = 2.
    const QpProblem qp = one_dimensional();
    const ExplicitIterate z{Vector::Ones(1), Vector::Ones(1), Vector(0), Vector::Constant(1, 2.0)};
    const ExplicitStep step = explicit_step(qp, z, 2.0, explicit_config());
    EXPECT_LE(std::abs(step.dz.dx[0]), 1e-15);
    EXPECT_LE(std::abs(step.dz.dlambda[0]), 1e-15);
    EXPECT_LE(std::abs(step.dz.ds[0]), 1e-15);
}

TEST(ExplicitStep, MatchesDenseUncondensedOracle)
{
    std::mt19937 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const QpProblem qp = random_qp(rng, 6, 5, 2);
        const ExplicitIterate z = random_explicit_iterate(rng, qp);
        const double mu = 0.5;
        const ExplicitStep step = explicit_step(qp, z, mu, explicit_config());
        const NewtonStep oracle = dense_newton_oracle(qp, z, mu);
        EXPECT_LE(testing::rel_diff(step.dz.dx, oracle.dx), 1e-9);
        EXPECT_LE(testing::rel_diff(step.dz.dlambda, oracle.dlambda), 1e-9);
        EXPECT_LE(testing::rel_diff(step.dz.dgamma, oracle.dgamma), 1e-9);
        EXPECT_LE(testing::rel_diff(step.dz.ds, oracle.ds), 1e-9);
        EXPECT_LE(explicit_newton_residual(qp, z, mu, step.dz), 1e-8);
    }
}

TEST(SolveExplicit, SyntheticReachesHandOptimum)
{
    const auto t0 = std::chrono::steady_clock::now();
    const ExplicitResult r = solve_explicit(builtin_problem("synthetic2d"), explicit_config());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ASSERT_EQ(r.trace.summary().status, SolveStatus::converged);
    EXPECT_LE(r.trace.summary().iterations, 50);
    EXPECT_LT(secs, 1.0);
    EXPECT_NEAR(r.iterate.x[0], 0.325, 1e-6);
    EXPECT_NEAR(r.iterate.x[1], 0.325, 1e-6);
    EXPECT_NEAR(r.iterate.lambda[0], 0.325, 1e-5);
    for (int i = 1; i < 4; ++i) {
        EXPECT_NEAR(r.iterate.lambda[i], 0.0, 1e-5);
    }
    EXPECT_LE(r.trace.summary().residual, 1e-9);
    EXPECT_LE(r.trace.summary().gap, 1e-9);
}

TEST(SolveExplicit, WithoutEquilibration)
{
    SolverConfig c = explicit_config();
    c.equilibrate = false;
    const ExplicitResult r = solve_explicit(builtin_problem("synthetic2d"), c);
    ASSERT_EQ(r.trace.summary().status, SolveStatus::converged);
    EXPECT_NEAR(r.iterate.x[0], 0.325, 1e-6);
    EXPECT_NEAR(r.iterate.x[1], 0.325, 1e-6);
}

TEST(SolveExplicit, IteratesStayInteriorAndGapDecreases)
{
    const ExplicitResult r = solve_explicit(builtin_problem("synthetic2d"), explicit_config());
    EXPECT_GT(r.iterate.lambda.minCoeff(), 0.0);
    EXPECT_GT(r.iterate.s.minCoeff(), 0.0);
    double best = std::numeric_limits<double>::infinity();
    for (const IterationRecord& rec : r.trace.records()) {
        EXPECT_GE(rec.gap, 0.0);
        EXPECT_LE(rec.gap, 10.0 * best) << "iteration " << rec.iter;
        best = std::min(best, rec.gap);
    }
}

TEST(SolveExplicit, DualDiagonalSpreadsNearSolution)
{
    const QpProblem qp = builtin_problem("synthetic2d");
    const ExplicitResult r = solve_explicit(qp, explicit_config());
    const Vector ratio = r.iterate.s.cwiseQuotient(r.iterate.lambda);
    EXPECT_GE(ratio.maxCoeff() / ratio.minCoeff(), 1e8);
}

TEST(SolveExplicit, InactiveConstraintsGiveZeroMultipliers)
{
    Vector q(2);
    q << 1.0, -2.0;
    const QpProblem qp(sparse_from_dense(Eigen::MatrixXd::Identity(2, 2)), q,
                       sparse_from_dense(Eigen::MatrixXd::Identity(2, 2)), Vector::Constant(2, -100.0),
                       SparseMatrix(0, 2), Vector(0));
    const ExplicitResult r = solve_explicit(qp, explicit_config());
    ASSERT_EQ(r.trace.summary().status, SolveStatus::converged);
    EXPECT_NEAR(r.iterate.x[0], -1.0, 1e-8);
    EXPECT_NEAR(r.iterate.x[1], 2.0, 1e-8);
    EXPECT_LE(r.iterate.lambda.maxCoeff(), 1e-9);
}

TEST(SolveExplicit, ContradictoryEqualitiesNeverConverge)
{
    Eigen::MatrixXd C(2, 2);
    C << 1.0, 1.0, 1.0, 1.0;
    Vector d(2);
    d << 1.0, 2.0;
    const QpProblem qp(sparse_from_dense(Eigen::MatrixXd::Identity(2, 2)), Vector::Zero(2),
                       sparse_from_dense(Eigen::MatrixXd::Identity(2, 2)), Vector::Constant(2, -5.0),
                       sparse_from_dense(C), d);
    SolverConfig c = explicit_config();
    c.max_iters = 50;
    SolveStatus status = SolveStatus::converged;
    try {
        status = solve_explicit(qp, c).trace.summary().status;
    } catch (const NumericalError&) {
        status = SolveStatus::stalled;
    }
    EXPECT_NE(status, SolveStatus::converged);
}

TEST(SolveExplicit, EqualityOnlyProblem)
{
    const ExplicitResult r = solve_explicit(builtin_problem("equality3d"), explicit_config());
    ASSERT_EQ(r.trace.summary().status, SolveStatus::converged);
    EXPECT_NEAR(r.iterate.x[0], 13.0 / 11.0, 1e-10);
    EXPECT_NEAR(r.iterate.x[1], 1.0 / 11.0, 1e-10);
    EXPECT_NEAR(r.iterate.x[2], -3.0 / 11.0, 1e-10);
    EXPECT_NEAR(r.iterate.gamma[0], 2.0 / 11.0, 1e-10);
    EXPECT_EQ(r.trace.summary().gap, 0.0);
}

TEST(SolveExplicit, RandomProblemsConvergeWithVerifiedSteps)
{
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const QpProblem qp = random_qp(rng, 8, 6, 2);
        SolverConfig c = explicit_config();
        c.verify_steps = true;
        const ExplicitResult r = solve_explicit(qp, c);
        EXPECT_EQ(r.trace.summary().status, SolveStatus::converged);
        EXPECT_LE(residuals(qp, r.iterate, 0.0).norm_inf(), 1e-9);
    }
}

TEST(SolveExplicit, MinresStrategyConverges)
{
    SolverConfig c = explicit_config();
    c.linear_strategy = LinearStrategy::minres;
    const ExplicitResult r = solve_explicit(builtin_problem("synthetic2d"), c);
    EXPECT_LE(r.trace.summary().gap, 1e-8);
    EXPECT_GT(r.trace.summary().krylov_total, 0);
    EXPECT_NEAR(r.iterate.x[0], 0.325, 1e-6);
}

TEST(SolveExplicit, DoublePrecisionRunsToTightResidual)
{
    SolverConfig c = explicit_config();
    c.tol = 1e-13;
    c.max_iters = 100;
    const ExplicitResult r = solve_explicit(builtin_problem("synthetic2d"), c);
    EXPECT_LE(r.trace.summary().residual, 1e-12);
}

// Single-precision linear solves with a double-precision line search are
// expected to stagnate for the explicit formulation.
TEST(SolveExplicit, SinglePrecisionStagnates)
{
    SolverConfig c = explicit_config();
    c.precision = Precision::f32;
    c.tol = 1e-16;
    c.max_iters = 100;
    const ExplicitResult r = solve_explicit(builtin_problem("synthetic2d"), c);
    EXPECT_GE(r.trace.summary().residual, 1e-6);
}

} // namespace
} // namespace ipqp
