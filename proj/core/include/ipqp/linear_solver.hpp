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

#ifndef IPQP_LINEAR_SOLVER_HPP
#define IPQP_LINEAR_SOLVER_HPP

#include <string>
#include <variant>
#include <vector>

#include "ipqp/errors.hpp"
#include "ipqp/kkt.hpp"
#include "ipqp/linalg/ldlt.hpp"
#include "ipqp/linalg/minres.hpp"
#include "ipqp/linalg/ordering.hpp"
#include "ipqp/solver_config.hpp"

namespace ipqp
{

struct LinearSolveReport
{
    bool factorized = false;
    int krylov_iters = 0;
    bool krylov_converged = true;
    double relative_residual = 0.0;
    Inertia inertia;
    int regularized_pivots = 0;
    std::vector<std::string> warnings;
};

/// LDL' factorization held in the working precision; solves take and return
/// binary64 vectors.
class DirectFactor
{
public:
    DirectFactor(linalg::Factorization<double> f) : f_(std::move(f)) {}
    DirectFactor(linalg::Factorization<float> f) : f_(std::move(f)) {}

    Vector solve(const Vector& rhs, double* relative_residual = nullptr) const;
    Inertia inertia() const;
    int regularized_pivots() const;
    Precision precision() const;

private:
    std::variant<linalg::Factorization<double>, linalg::Factorization<float>> f_;
};

/**
 * Solves condensed KKT systems with one strategy for the lifetime of a solve.
 * Keeps the fill-reducing ordering of the last pattern, so repeated systems
 * with an unchanged pattern reuse it.
 */
class LinearSolver
{
public:
    explicit LinearSolver(const SolverConfig& config);

    /// Direct strategies factor and solve; minres runs preconditioned MINRES.
    Vector solve(const KktSystem& kkt, LinearSolveReport& report);

    /// Factorization in the configured precision (direct and inexact).
    DirectFactor factor(const KktSystem& kkt);

    int ordering_computations() const { return ordering_.computations(); }
    const SolverConfig& config() const { return config_; }

private:
    Vector solve_minres(const KktSystem& kkt, LinearSolveReport& report) const;

    SolverConfig config_;
    linalg::OrderingCache ordering_;
};

} // namespace ipqp

#endif // IPQP_LINEAR_SOLVER_HPP
