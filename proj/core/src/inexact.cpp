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

#include "ipqp/inexact.hpp"

#include <limits>

#include "implicit_loop.hpp"

namespace ipqp
{

namespace
{

void check_theta(double theta)
{
    if (!(theta > 0.0 && theta < 1.0)) {
        throw InvalidInput("theta must lie in (0, 1), got " + std::to_string(theta));
    }
}

struct Attempt
{
    Vector condensed;
    std::optional<FrozenFactorization> cache;
    bool used_frozen = false;
    LinearSolveReport report;
};

// Shared by step_with_reuse and the solver loop. `kkt` is the fresh J_k.
Attempt attempt(const ImplicitKkt& kkt, const ImplicitIterate& z, double mu, std::optional<FrozenFactorization> cache,
                double theta, LinearSolver& solver, int iter, bool force_fresh)
{
    const int n = kkt.n;
    const int m = kkt.m;
    Attempt out;
    const Vector d_k = kkt.dual_diagonal();
    if (cache && !force_fresh) {
        Vector sol = cache->factor->solve(kkt.rhs, &out.report.relative_residual);
        if (inexact_condition_diagonal(cache->d_star, d_k, sol.segment(n, m), theta, kkt.rhs.segment(n, m))) {
            ++cache->reuse_count;
            out.condensed = std::move(sol);
            out.cache = std::move(cache);
            out.used_frozen = true;
            return out;
        }
    }
    auto F = std::make_shared<const DirectFactor>(solver.factor(kkt));
    out.condensed = F->solve(kkt.rhs, &out.report.relative_residual);
    out.report.factorized = true;
    out.report.inertia = F->inertia();
    out.report.regularized_pivots = F->regularized_pivots();
    FrozenFactorization fresh;
    fresh.factor = std::move(F);
    fresh.v_star = z.v;
    fresh.mu_star = mu;
    fresh.d_star = d_k;
    fresh.created_iter = iter;
    out.cache = std::move(fresh);
    return out;
}

} // namespace

bool inexact_condition_diagonal(const Vector& d_star, const Vector& d_k, const Vector& dv_k, double theta,
                                const Vector& r2_k)
{
    check_theta(theta);
    if (d_star.size() != d_k.size() || d_k.size() != dv_k.size() || dv_k.size() != r2_k.size()) {
        throw InvalidInput("inexact condition: vector lengths differ");
    }
    const double lhs = (d_star - d_k).cwiseProduct(dv_k).norm();
    return lhs <= theta * r2_k.norm();
}

bool inexact_condition(const Vector& v_star, const Vector& v_k, const Vector& dv_k, double mu, double theta,
                       const Vector& r2_k)
{
    if (v_star.size() != v_k.size()) {
        throw InvalidInput("inexact condition: vector lengths differ");
    }
    return inexact_condition_diagonal(retraction_derivative_minus(v_star, mu), retraction_derivative_minus(v_k, mu),
                                      dv_k, theta, r2_k);
}

double linearized_residual_ratio(const ImplicitKkt& fresh, const Vector& condensed)
{
    const Vector res = fresh.rhs - fresh.matrix.multiply(condensed);
    const double den = fresh.rhs.norm();
    return den > 0.0 ? res.norm() / den : res.norm();
}

ReuseStep step_with_reuse(const QpProblem& problem, const ImplicitIterate& z, double mu,
                          std::optional<FrozenFactorization> cache, double theta, LinearSolver& solver, int iter)
{
    check_theta(theta);
    const ImplicitKkt kkt = assemble_implicit(problem, z, mu);
    Attempt a = attempt(kkt, z, mu, std::move(cache), theta, solver, iter, false);
    ReuseStep out;
    out.dz = recover_implicit_step(problem, z, mu, a.condensed);
    if (a.used_frozen) {
        out.oracle_ratio = linearized_residual_ratio(kkt, a.condensed);
    }
    out.condensed = std::move(a.condensed);
    out.cache = std::move(a.cache);
    out.used_frozen = a.used_frozen;
    out.report = std::move(a.report);
    return out;
}

ImplicitResult solve_implicit_inexact(const QpProblem& problem, const SolverConfig& config)
{
    config.validate();
    if (config.method != Method::implicit_ipm || config.linear_strategy != LinearStrategy::inexact) {
        throw InvalidInput("solve_implicit_inexact requires method=implicit and linsolve=inexact");
    }
    const double theta = config.theta_or_default();
    check_theta(theta);
    auto solver = std::make_shared<LinearSolver>(config);
    auto cache = std::make_shared<std::optional<FrozenFactorization>>();
    const bool verify = config.verify_steps && config.precision == Precision::f64;

    const detail::CondensedSolver solve = [solver, cache, theta, verify](const QpProblem&, const ImplicitIterate& z,
                                                                        double mu, const ImplicitKkt& kkt, int iter,
                                                                        bool force_fresh) {
        Attempt a = attempt(kkt, z, mu, *cache, theta, *solver, iter, force_fresh);
        detail::CondensedSolve cs;
        if (a.used_frozen && verify) {
            const double ratio = linearized_residual_ratio(kkt, a.condensed);
            // Rounding slack for the frozen solve itself.
            if (ratio > theta + 1e-12) {
                throw NumericalError("frozen step violates the inexact Newton condition: ratio " +
                                     std::to_string(ratio) + " > theta " + std::to_string(theta));
            }
        }
        *cache = std::move(a.cache);
        cs.solution = std::move(a.condensed);
        cs.report = std::move(a.report);
        cs.used_frozen = a.used_frozen;
        return cs;
    };
    return detail::run_implicit(problem, config, solve, [solver] { return solver->ordering_computations(); });
}

} // namespace ipqp
