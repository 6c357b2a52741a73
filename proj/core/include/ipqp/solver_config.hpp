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

#ifndef IPQP_SOLVER_CONFIG_HPP
#define IPQP_SOLVER_CONFIG_HPP

#include <optional>
#include <string>
#include <string_view>

namespace ipqp
{

enum class Method
{
    explicit_ipm,
    implicit_ipm,
};

enum class LinearStrategy
{
    direct,
    inexact,
    minres,
};

enum class Precision
{
    f64,
    f32,
};

enum class TraceLevel
{
    basic,
    spectrum,
};

enum class SolveStatus
{
    converged,
    max_iters,
    stalled,
};

std::string to_string(Method m);
std::string to_string(LinearStrategy s);
std::string to_string(Precision p);
std::string to_string(TraceLevel t);
std::string to_string(SolveStatus s);

// Parsers throw InvalidInput listing the accepted names.
Method parse_method(std::string_view s);
LinearStrategy parse_linear_strategy(std::string_view s);
Precision parse_precision(std::string_view s);
TraceLevel parse_trace_level(std::string_view s);
SolveStatus parse_status(std::string_view s);

struct SolverConfig
{
    Method method = Method::implicit_ipm;
    LinearStrategy linear_strategy = LinearStrategy::direct;
    Precision precision = Precision::f64;
    double sigma = 0.1;
    // Forcing term of the inexact strategy. Only meaningful with
    // LinearStrategy::inexact.
    std::optional<double> theta;
    double tol = 1e-9;
    int max_iters = 200;
    bool equilibrate = true;
    TraceLevel trace_level = TraceLevel::basic;

    double minres_rtol = 1e-10;
    double minres_atol = 1e-10;
    int minres_max_iters = 0; // 0 selects 10 * dim
    double block_jacobi_singular_rtol = 1e-14;

    // Static regularization relative to max(1, primal-row norm of M).
    double static_reg = 1e-9;
    int spectrum_cap = 500;

    // Recompute the uncondensed Newton residual after each direct step and the
    // unsimplified inexact condition after each frozen step; throws
    // NumericalError on violation.
    bool verify_steps = false;

    double theta_or_default() const { return theta.value_or(0.5); }

    /// Throws InvalidInput on out-of-range values or conflicting options.
    void validate() const;
};

} // namespace ipqp

#endif // IPQP_SOLVER_CONFIG_HPP
