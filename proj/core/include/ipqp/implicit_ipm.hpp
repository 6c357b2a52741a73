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

#ifndef IPQP_IMPLICIT_IPM_HPP
#define IPQP_IMPLICIT_IPM_HPP

#include "ipqp/diagnostics.hpp"
#include "ipqp/explicit_ipm.hpp"
#include "ipqp/kkt.hpp"
#include "ipqp/linear_solver.hpp"
#include "ipqp/qp_problem.hpp"
#include "ipqp/retraction.hpp"
#include "ipqp/solver_config.hpp"

namespace ipqp
{

/*
 * Implicit-complementarity interior-point method. An auxiliary v replaces
 * the complementarity equation by the two residuals
 *
 *     r_lambda = lambda - b_mu(v),  r_s = s - b_mu(-v),
 *
 * which keep lambda .* s = mu on the retraction manifold. Condensing the
 * Newton system with db_mu(v) + db_mu(-v) = 1 gives
 *
 *     J = [ Q - A'A  -A'         -C' ]        [ -r_x + A'(r_i - r_lambda + r_s) ]
 *         [ -A       -B_mu(-v)    0  ],  rhs = [ r_i + r_s                       ]
 *         [ -C        0           0  ]        [ r_e                             ]
 *
 * in (dx, dv, dgamma), then
 *
 *     dlambda = B_mu(v) dv - r_lambda,  ds = -B_mu(-v) dv - r_s.
 *
 * Only the m diagonal entries of B_mu(-v) depend on the iterate.
 */

/// r_comp stacks (r_lambda, r_s) and has length 2m. With m = 0, mu is unused.
ResidualVector implicit_residuals(const QpProblem& problem, const ImplicitIterate& z, double mu);

ImplicitKkt assemble_implicit(const QpProblem& problem, const ImplicitIterate& z, double mu);

/// Rewrites the (2,2) diagonal and rhs of an existing implicit system in place.
void update_implicit(ImplicitKkt& kkt, const QpProblem& problem, const ImplicitIterate& z, double mu);

/// Implicit right-hand side alone.
Vector implicit_rhs(const QpProblem& problem, const ImplicitIterate& z, double mu);

/// Expands a condensed solution (dx, dv, dgamma) into the full step.
NewtonStep recover_implicit_step(const QpProblem& problem, const ImplicitIterate& z, double mu,
                                 const Vector& condensed);

/// ||uncondensed linearized residual||_inf / ||r_mu||_inf.
double implicit_newton_residual(const QpProblem& problem, const ImplicitIterate& z, double mu, const NewtonStep& dz);

struct ImplicitStep
{
    NewtonStep dz;
    StepReport report;
};

ImplicitStep implicit_step(const QpProblem& problem, const ImplicitIterate& z, double mu, LinearSolver& solver);
ImplicitStep implicit_step(const QpProblem& problem, const ImplicitIterate& z, double mu,
                           const SolverConfig& config);

struct ImplicitResult
{
    ImplicitIterate iterate; // original coordinates
    SolveTrace trace;
};

/// Runs the implicit method; LinearStrategy::inexact is routed through
/// solve_implicit_inexact.
ImplicitResult solve_implicit(const QpProblem& problem, const SolverConfig& config);

/// v = 0, lambda = s = 1 (mu_0 = 1), x and gamma as for the explicit method.
ImplicitIterate implicit_initial_point(const QpProblem& problem);

} // namespace ipqp

#endif // IPQP_IMPLICIT_IPM_HPP
