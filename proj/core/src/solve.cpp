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


#include "ipqp/solve.hpp"

#include "ipqp/explicit_ipm.hpp"
#include "ipqp/implicit_ipm.hpp"

namespace ipqp
{

SolveOutcome solve(const QpProblem& problem, const SolverConfig& config)
{
    config.validate();
    SolveOutcome out;
    const std::string method = to_string(config.method);
    if (config.method == Method::explicit_ipm) {
        ExplicitResult r = solve_explicit(problem, config);
        out.solution = make_solution_record(problem, r.iterate, r.trace.summary().status, method,
                                            r.trace.summary().iterations);
        out.trace = std::move(r.trace);
    } else {
        ImplicitResult r = solve_implicit(problem, config);
        out.solution = make_solution_record(problem, r.iterate, r.trace.summary().status, method,
                                            r.trace.summary().iterations);
        out.trace = std::move(r.trace);
    }
    return out;
}

} // namespace ipqp
