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

#include "ipqp/linear_solver.hpp"

#include "ipqp/linalg/block_jacobi.hpp"

namespace ipqp
{

Vector DirectFactor::solve(const Vector& rhs, double* relative_residual) const
{
    linalg::LdltSolveInfo info;
    Vector out;
    if (const auto* fd = std::get_if<linalg::Factorization<double>>(&f_)) {
        out = fd->solve(rhs, &info);
    } else {
        const auto& ff = std::get<linalg::Factorization<float>>(f_);
        out = ff.solve(rhs.cast<float>(), &info).cast<double>();
    }
    if (relative_residual != nullptr) {
        *relative_residual = info.relative_residual;
    }
    return out;
}

Inertia DirectFactor::inertia() const
{
    return std::visit([](const auto& f) { return f.inertia(); }, f_);
}

int DirectFactor::regularized_pivots() const
{
    return std::visit([](const auto& f) { return f.regularized_pivots(); }, f_);
}

Precision DirectFactor::precision() const
{
    return std::holds_alternative<linalg::Factorization<double>>(f_) ? Precision::f64 : Precision::f32;
}

LinearSolver::LinearSolver(const SolverConfig& config) : config_(config) {}

DirectFactor LinearSolver::factor(const KktSystem& kkt)
{
    const auto& order = ordering_.order(linalg::pattern_of(kkt.matrix));
    // Scaled by the primal rows only: the dual diagonal of the explicit
    // matrix grows without bound and would swamp small primal pivots.
    const double reg = config_.static_reg * std::max(1.0, kkt.matrix.inf_norm_of_sign(+1));
    if (config_.precision == Precision::f64) {
        return DirectFactor(linalg::ldlt_factor(kkt.matrix, reg, order));
    }
    return DirectFactor(linalg::ldlt_factor(kkt.matrix.cast<float>(), static_cast<float>(reg), order));
}

Vector LinearSolver::solve(const KktSystem& kkt, LinearSolveReport& report)
{
    report = LinearSolveReport{};
    if (config_.linear_strategy == LinearStrategy::minres) {
        return solve_minres(kkt, report);
    }
    DirectFactor F = factor(kkt);
    report.factorized = true;
    report.inertia = F.inertia();
    report.regularized_pivots = F.regularized_pivots();
    return F.solve(kkt.rhs, &report.relative_residual);
}

namespace
{

template <std::floating_point T>
Vector run_minres(const linalg::SparseSymmetric<T>& M, const std::vector<int>& partition, const Vector& rhs,
                  const SolverConfig& config, LinearSolveReport& report)
{
    linalg::BlockJacobiOptions bj;
    bj.singular_rtol = config.block_jacobi_singular_rtol;
    const linalg::BlockJacobi<T> P(M, partition, bj);
    report.warnings = P.warnings();
    linalg::MinresOptions opts;
    opts.rtol = config.minres_rtol;
    opts.atol = config.minres_atol;
    opts.max_iters = config.minres_max_iters;
    const auto res = linalg::minres<T>(linalg::as_operator(M), rhs.cast<T>(), P.as_operator(), opts);
    report.krylov_iters = res.report.iterations;
    report.krylov_converged = res.report.converged;
    report.relative_residual = res.report.relative_residual;
    if (!res.report.converged) {
        report.warnings.push_back("MINRES did not converge in " + std::to_string(res.report.iterations) +
                                  " iterations (relative residual " + std::to_string(res.report.relative_residual) +
                                  ")");
    }
    return res.x.template cast<double>();
}

} // namespace

Vector LinearSolver::solve_minres(const KktSystem& kkt, LinearSolveReport& report) const
{
    if (config_.precision == Precision::f64) {
        return run_minres<double>(kkt.matrix, kkt.partition(), kkt.rhs, config_, report);
    }
    return run_minres<float>(kkt.matrix.cast<float>(), kkt.partition(), kkt.rhs, config_, report);
}

} // namespace ipqp
