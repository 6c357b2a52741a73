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

#ifndef IPQP_INEXACT_HPP
#define IPQP_INEXACT_HPP

#include <memory>
#include <optional>

#include "ipqp/implicit_ipm.hpp"
#include "ipqp/linear_solver.hpp"

namespace ipqp
{

/*
 * Factorization reuse for the implicit method. A frozen J* = J(v*) differs
 * from the current J_k only in the (2,2) diagonal, so for a step dz solving
 * J* dz = rhs_k the linearized residual is
 *
 *     rhs_k - J_k dz = (0, (B(-v_k) - B(-v*)) dv, 0),
 *
 * and the inexact Newton test reduces to
 *
 *     || (B(-v*) - B(-v_k)) dv ||_2 <= theta || rhs_k[m-block] ||_2.
 */

/// The test above with both diagonals evaluated at the same mu.
bool inexact_condition(const Vector& v_star, const Vector& v_k, const Vector& dv_k, double mu, double theta,
                       const Vector& r2_k);

/// Same test from precomputed diagonals B(-v*) and B(-v_k).
bool inexact_condition_diagonal(const Vector& d_star, const Vector& d_k, const Vector& dv_k, double theta,
                                const Vector& r2_k);

/// ||rhs - J dz||_2 / ||rhs||_2 for the fresh system J (independent check).
double linearized_residual_ratio(const ImplicitKkt& fresh, const Vector& condensed);

struct FrozenFactorization
{
    std::shared_ptr<const DirectFactor> factor;
    Vector v_star;
    double mu_star = 0.0;
    Vector d_star; // B_{mu*}(-v*), the diagonal actually factored
    int created_iter = 0;
    int reuse_count = 0;
};

struct ReuseStep
{
    NewtonStep dz;
    Vector condensed;
    std::optional<FrozenFactorization> cache;
    bool used_frozen = false;
    LinearSolveReport report;
    // Set for frozen steps: linearized_residual_ratio against the fresh J_k.
    std::optional<double> oracle_ratio;
};

/// One inexact step. Tries the cached factorization first and keeps its
/// step if the test passes; otherwise factors J(v_k), solves, and replaces
/// the cache.
ReuseStep step_with_reuse(const QpProblem& problem, const ImplicitIterate& z, double mu,
                          std::optional<FrozenFactorization> cache, double theta, LinearSolver& solver, int iter = 0);

/// Implicit method with the inexact strategy and constant theta.
ImplicitResult solve_implicit_inexact(const QpProblem& problem, const SolverConfig& config);

} // namespace ipqp

#endif // IPQP_INEXACT_HPP
