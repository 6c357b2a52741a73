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


#ifndef IPQP_SOLVE_HPP
#define IPQP_SOLVE_HPP

#include "ipqp/diagnostics.hpp"
#include "ipqp/qps_io.hpp"

namespace ipqp
{

struct SolveOutcome
{
    SolveTrace trace;
    SolutionRecord solution;
};

/// Dispatches on config.method and config.linear_strategy.
SolveOutcome solve(const QpProblem& problem, const SolverConfig& config);

} // namespace ipqp

#endif // IPQP_SOLVE_HPP
