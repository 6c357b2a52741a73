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

#include "ipqp/solver_config.hpp"

#include <cmath>

#include "ipqp/errors.hpp"

namespace ipqp
{

std::string to_string(Method m)
{
    return m == Method::explicit_ipm ? "explicit" : "implicit";
}

std::string to_string(LinearStrategy s)
{
    switch (s) {
    case LinearStrategy::direct:
        return "direct";
    case LinearStrategy::inexact:
        return "inexact";
    case LinearStrategy::minres:
        return "minres";
    }
    return "unknown";
}

std::string to_string(Precision p)
{
    return p == Precision::f64 ? "f64" : "f32";
}

std::string to_string(TraceLevel t)
{
    return t == TraceLevel::basic ? "basic" : "spectrum";
}

std::string to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::converged:
        return "converged";
    case SolveStatus::max_iters:
        return "max_iters";
    case SolveStatus::stalled:
        return "stalled";
    }
    return "unknown";
}

Method parse_method(std::string_view s)
{
    if (s == "explicit") {
        return Method::explicit_ipm;
    }
    if (s == "implicit") {
        return Method::implicit_ipm;
    }
    throw InvalidInput("unknown method '" + std::string(s) + "' (expected explicit|implicit)");
}

LinearStrategy parse_linear_strategy(std::string_view s)
{
    if (s == "direct") {
        return LinearStrategy::direct;
    }
    if (s == "inexact") {
        return LinearStrategy::inexact;
    }
    if (s == "minres") {
        return LinearStrategy::minres;
    }
    throw InvalidInput("unknown linear strategy '" + std::string(s) + "' (expected direct|inexact|minres)");
}

Precision parse_precision(std::string_view s)
{
    if (s == "f64") {
        return Precision::f64;
    }
    if (s == "f32") {
        return Precision::f32;
    }
    throw InvalidInput("unknown precision '" + std::string(s) + "' (expected f64|f32)");
}

TraceLevel parse_trace_level(std::string_view s)
{
    if (s == "basic") {
        return TraceLevel::basic;
    }
    if (s == "spectrum") {
        return TraceLevel::spectrum;
    }
    throw InvalidInput("unknown trace level '" + std::string(s) + "' (expected basic|spectrum)");
}

SolveStatus parse_status(std::string_view s)
{
    if (s == "converged") {
        return SolveStatus::converged;
    }
    if (s == "max_iters") {
        return SolveStatus::max_iters;
    }
    if (s == "stalled") {
        return SolveStatus::stalled;
    }
    throw InvalidInput("unknown status '" + std::string(s) + "' (expected converged|max_iters|stalled)");
}

void SolverConfig::validate() const
{
    if (!(sigma > 0.0 && sigma <= 1.0)) {
        throw InvalidInput("sigma must lie in (0, 1], got " + std::to_string(sigma));
    }
    if (theta.has_value()) {
        if (linear_strategy != LinearStrategy::inexact) {
            throw InvalidInput("theta is only valid with the inexact linear strategy");
        }
        if (!(*theta > 0.0 && *theta < 1.0)) {
            throw InvalidInput("theta must lie in (0, 1), got " + std::to_string(*theta));
        }
    }
    if (linear_strategy == LinearStrategy::inexact && method != Method::implicit_ipm) {
        throw InvalidInput("the inexact strategy requires the implicit method");
    }
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw InvalidInput("tol must be positive");
    }
    if (max_iters < 1) {
        throw InvalidInput("max_iters must be at least 1");
    }
    if (!(minres_rtol >= 0.0) || !(minres_atol >= 0.0)) {
        throw InvalidInput("MINRES tolerances must be non-negative");
    }
    if (minres_max_iters < 0) {
        throw InvalidInput("minres_max_iters must be non-negative");
    }
    if (!(static_reg >= 0.0)) {
        throw InvalidInput("static_reg must be non-negative");
    }
    if (!(block_jacobi_singular_rtol >= 0.0 && block_jacobi_singular_rtol < 1.0)) {
        throw InvalidInput("block_jacobi_singular_rtol must lie in [0, 1)");
    }
    if (spectrum_cap < 1) {
        throw InvalidInput("spectrum_cap must be positive");
    }
}

} // namespace ipqp
