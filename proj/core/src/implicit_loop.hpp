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

// Outer loop of the implicit method with a pluggable linear solve. Not
// installed.

#ifndef IPQP_SRC_IMPLICIT_LOOP_HPP
#define IPQP_SRC_IMPLICIT_LOOP_HPP

#include <functional>

#include "ipqp/implicit_ipm.hpp"

namespace ipqp::detail
{

struct CondensedSolve
{
    Vector solution; // (dx, dv, dgamma)
    LinearSolveReport report;
    bool used_frozen = false;
    std::vector<std::string> warnings;
};

/// Solves the freshly updated system `kkt` (working problem, iterate z, mu).
/// `force_fresh` asks for an exact solve after a rejected frozen step.
using CondensedSolver = std::function<CondensedSolve(const QpProblem& work, const ImplicitIterate& z, double mu,
                                                     const ImplicitKkt& kkt, int iter, bool force_fresh)>;

ImplicitResult run_implicit(const QpProblem& problem, const SolverConfig& config, const CondensedSolver& solve,
                            const std::function<int()>& ordering_computations);

} // namespace ipqp::detail

#endif // IPQP_SRC_IMPLICIT_LOOP_HPP
