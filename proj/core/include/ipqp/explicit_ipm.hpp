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

#ifndef IPQP_EXPLICIT_IPM_HPP
#define IPQP_EXPLICIT_IPM_HPP

#include <limits>

#include "ipqp/diagnostics.hpp"
#include "ipqp/kkt.hpp"
#include "ipqp/linear_solver.hpp"
#include "ipqp/qp_problem.hpp"
#include "ipqp/solver_config.hpp"

namespace ipqp
{

/*
 * Standard primal-dual interior-point method. The Newton system of
 *
 *     r_x = Qx + q - A'lambda - C'gamma,  r_i = Ax - b - s,  r_e = Cx - d,
 *     r_c = lambda .* s - mu
 *
 * is condensed by eliminating ds, giving
 *
 *     E = [ Q   -A'              -C' ]        [ -r_x                   ]
 *         [ -A  -inv(Lambda) S    0  ],  rhs = [ r_i + inv(Lambda) r_c ]
 *         [ -C   0                0  ]        [ r_e                    ]
 *
 * and ds = A dx + r_i afterwards.
 */

struct StepReport
{
    LinearSolveReport linear;
    // ||full linearized residual||_inf / ||r_mu||_inf; NaN when not computed.
    double newton_residual = std::numeric_limits<double>::quiet_NaN();
};

struct ExplicitStep
{
    NewtonStep dz;
    StepReport report;
};

/// Throws InvalidInput if any lambda_i or s_i is not strictly positive.
ExplicitKkt assemble_explicit(const QpProblem& problem, const ExplicitIterate& z, double mu);

/// Refreshes the (2,2) diagonal and rhs of an existing explicit system.
void update_explicit(ExplicitKkt& kkt, const QpProblem& problem, const ExplicitIterate& z, double mu);

/// Relative residual of the uncondensed Newton system for a computed step.
double explicit_newton_residual(const QpProblem& problem, const ExplicitIterate& z, double mu, const NewtonStep& dz);

ExplicitStep explicit_step(const QpProblem& problem, const ExplicitIterate& z, double mu, LinearSolver& solver);
ExplicitStep explicit_step(const QpProblem& problem, const ExplicitIterate& z, double mu,
                           const SolverConfig& config);

struct ExplicitResult
{
    ExplicitIterate iterate; // original coordinates
    SolveTrace trace;
};

ExplicitResult solve_explicit(const QpProblem& problem, const SolverConfig& config);

/// Starting point: min-norm equality-feasible x, lambda = s = 1, gamma = 0.
ExplicitIterate explicit_initial_point(const QpProblem& problem);

} // namespace ipqp

#endif // IPQP_EXPLICIT_IPM_HPP
