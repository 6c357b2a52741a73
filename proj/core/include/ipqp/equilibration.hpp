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

#ifndef IPQP_EQUILIBRATION_HPP
#define IPQP_EQUILIBRATION_HPP

#include <string>
#include <vector>

#include "ipqp/qp_problem.hpp"

namespace ipqp
{

/**
 * Symmetric diagonal scaling of the stacked matrix
 *
 *     K = [ Q  A'  C' ]
 *         [ A  0   0  ]
 *         [ C  0   0  ]
 *
 * as diag(D, E_A, E_C) K diag(D, E_A, E_C), plus a scalar objective scaling c.
 * The scaled problem is
 *
 *     Q^ = c D Q D,  q^ = c D q,  A^ = E_A A D,  b^ = E_A b,  C^ = E_C C D,  d^ = E_C d
 *
 * and iterates map back as x = D x^, lambda = E_A lambda^ / c,
 * gamma = E_C gamma^ / c, s = s^ / E_A. The auxiliary variable v is carried
 * through unchanged.
 */
struct ScalingState
{
    Vector col;      // D, length n
    Vector row_ineq; // E_A, length m
    Vector row_eq;   // E_C, length p
    double objective = 1.0;
    int passes = 0;
    std::vector<std::string> warnings;

    static ScalingState identity(int n, int m, int p);
    bool is_identity(double tol = 0.0) const;
};

struct EquilibratedProblem
{
    QpProblem problem;
    ScalingState scaling;
};

EquilibratedProblem ruiz_equilibrate(const QpProblem& problem, int max_passes = 10, double tol = 1e-3);

/// Applies a given scaling to problem data.
QpProblem apply_scaling(const QpProblem& problem, const ScalingState& scaling);

ExplicitIterate unscale_solution(const ExplicitIterate& z, const ScalingState& scaling);
ImplicitIterate unscale_solution(const ImplicitIterate& z, const ScalingState& scaling);

/// Inverse of unscale_solution: original coordinates -> scaled coordinates.
ExplicitIterate scale_iterate(const ExplicitIterate& z, const ScalingState& scaling);
ImplicitIterate scale_iterate(const ImplicitIterate& z, const ScalingState& scaling);

} // namespace ipqp

#endif // IPQP_EQUILIBRATION_HPP
