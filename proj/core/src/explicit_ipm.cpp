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

#include "ipqp/explicit_ipm.hpp"

#include <algorithm>
#include <cmath>

#include "ipm_common.hpp"

namespace ipqp
{

namespace
{

void require_interior(const ExplicitIterate& z)
{
    for (Eigen::Index i = 0; i < z.lambda.size(); ++i) {
        if (!(z.lambda[i] > 0.0) || !(z.s[i] > 0.0)) {
            throw InvalidInput("explicit KKT assembly requires lambda, s > 0; entry " + std::to_string(i) +
                               " has lambda = " + std::to_string(z.lambda[i]) + ", s = " + std::to_string(z.s[i]));
        }
    }
}

Vector explicit_rhs(const QpProblem& problem, const ExplicitIterate& z, double mu)
{
    const ResidualVector r = residuals(problem, z, mu);
    const int n = problem.n();
    const int m = problem.m();
    const int p = problem.p();
    Vector rhs(n + m + p);
    rhs.head(n) = -r.r_x;
    rhs.segment(n, m) = r.r_i + r.r_comp.cwiseQuotient(z.lambda);
    rhs.tail(p) = r.r_e;
    return rhs;
}

// ||r_mu||_inf of the explicit formulation.
double merit(const QpProblem& problem, const ExplicitIterate& z, double mu)
{
    return residuals(problem, z, mu).norm_inf();
}

ExplicitIterate add_step(const ExplicitIterate& z, const NewtonStep& dz, double alpha)
{
    return {z.x + alpha * dz.dx, z.lambda + alpha * dz.dlambda, z.gamma + alpha * dz.dgamma, z.s + alpha * dz.ds};
}

// Rows of the uncondensed Newton system evaluated at dz (zero for an exact
// step).
struct FullResidual
{
    Vector e1;
    Vector e2;
    Vector e3;
    Vector e4;

    double norm_inf() const { return std::max({inf_norm(e1), inf_norm(e2), inf_norm(e3), inf_norm(e4)}); }
};

FullResidual full_residual(const QpProblem& problem, const ExplicitIterate& z, const ResidualVector& r,
                           const NewtonStep& dz)
{
    FullResidual e;
    e.e1 = problem.Q() * dz.dx - problem.A().transpose() * dz.dlambda - problem.C().transpose() * dz.dgamma + r.r_x;
    e.e2 = problem.A() * dz.dx - dz.ds + r.r_i;
    e.e3 = problem.C() * dz.dx + r.r_e;
    e.e4 = z.s.cwiseProduct(dz.dlambda) + z.lambda.cwiseProduct(dz.ds) + r.r_comp;
    return e;
}

// (dx, dlambda, dgamma) from a condensed solution; ds from the second row,
// ds = A dx + row2 where row2 is the second-row residual being cancelled.
NewtonStep unpack(const QpProblem& problem, const Vector& sol, const Vector& row2)
{
    const int n = problem.n();
    const int m = problem.m();
    NewtonStep dz;
    dz.dx = sol.head(n);
    dz.dlambda = sol.segment(n, m);
    dz.dgamma = sol.tail(problem.p());
    dz.ds = problem.A() * dz.dx + row2;
    dz.dv = Vector(0);
    return dz;
}

constexpr int kFullRefinementSteps = 5;

// Condensed solve. Binary64 direct solves are refined against the
// uncondensed residual with the same factorization: the condensed solve is
// backward stable in the norm of E, whose Lambda^-1 S block spans many
// orders of magnitude near convergence, and that error is not small in the
// rows of the original system.
NewtonStep newton_direction(const QpProblem& problem, const ExplicitIterate& z, const ResidualVector& r,
                            const ExplicitKkt& kkt, LinearSolver& solver, LinearSolveReport& report)
{
    const SolverConfig& config = solver.config();
    if (config.linear_strategy == LinearStrategy::minres || config.precision == Precision::f32) {
        return unpack(problem, solver.solve(kkt, report), r.r_i);
    }
    report = LinearSolveReport{};
    const DirectFactor F = solver.factor(kkt);
    report.factorized = true;
    report.inertia = F.inertia();
    report.regularized_pivots = F.regularized_pivots();
    NewtonStep dz = unpack(problem, F.solve(kkt.rhs, &report.relative_residual), r.r_i);
    double res = full_residual(problem, z, r, dz).norm_inf();
    const double target = 1e-14 * r.norm_inf();
    for (int k = 0; k < kFullRefinementSteps && res > target; ++k) {
        const FullResidual e = full_residual(problem, z, r, dz);
        Vector rhs(kkt.dim());
        rhs << -e.e1, e.e2 + e.e4.cwiseQuotient(z.lambda), e.e3;
        const NewtonStep d = unpack(problem, F.solve(rhs), e.e2);
        NewtonStep cand = dz;
        cand.dx += d.dx;
        cand.dlambda += d.dlambda;
        cand.dgamma += d.dgamma;
        cand.ds += d.ds;
        const double rn = full_residual(problem, z, r, cand).norm_inf();
        if (!(rn < res)) {
            break;
        }
        dz = std::move(cand);
        res = rn;
    }
    return dz;
}

} // namespace

ExplicitKkt assemble_explicit(const QpProblem& problem, const ExplicitIterate& z, double mu)
{
    check_iterate(problem, z);
    require_interior(z);
    return build_kkt(Formulation::explicit_e, problem.Q(), problem.A(), problem.C(), z.s.cwiseQuotient(z.lambda),
                     explicit_rhs(problem, z, mu));
}

void update_explicit(ExplicitKkt& kkt, const QpProblem& problem, const ExplicitIterate& z, double mu)
{
    check_iterate(problem, z);
    require_interior(z);
    kkt.set_dual_diagonal(z.s.cwiseQuotient(z.lambda));
    kkt.rhs = explicit_rhs(problem, z, mu);
}

double explicit_newton_residual(const QpProblem& problem, const ExplicitIterate& z, double mu, const NewtonStep& dz)
{
    const ResidualVector r = residuals(problem, z, mu);
    const double den = r.norm_inf();
    const double num = full_residual(problem, z, r, dz).norm_inf();
    return den > 0.0 ? num / den : num;
}

ExplicitStep explicit_step(const QpProblem& problem, const ExplicitIterate& z, double mu, LinearSolver& solver)
{
    const ExplicitKkt kkt = assemble_explicit(problem, z, mu);
    const ResidualVector r = residuals(problem, z, mu);
    ExplicitStep out;
    out.dz = newton_direction(problem, z, r, kkt, solver, out.report.linear);
    out.report.newton_residual = explicit_newton_residual(problem, z, mu, out.dz);
    return out;
}

ExplicitStep explicit_step(const QpProblem& problem, const ExplicitIterate& z, double mu, const SolverConfig& config)
{
    LinearSolver solver(config);
    return explicit_step(problem, z, mu, solver);
}

ExplicitIterate explicit_initial_point(const QpProblem& problem)
{
    ExplicitIterate z;
    z.x = detail::min_norm_equality_point(problem);
    z.lambda = Vector::Ones(problem.m());
    z.s = Vector::Ones(problem.m());
    z.gamma = Vector::Zero(problem.p());
    return z;
}

ExplicitResult solve_explicit(const QpProblem& problem, const SolverConfig& config)
{
    config.validate();
    if (config.linear_strategy == LinearStrategy::inexact) {
        throw InvalidInput("the inexact strategy requires the implicit method");
    }
    const detail::WorkingProblem wp = detail::prepare(problem, config);
    const QpProblem& work = wp.problem;
    const int m = work.m();

    SolveTrace trace(make_header(config, problem.name(), problem.n(), problem.m(), problem.p()));
    TraceSummary& summary = trace.summary();
    summary.warnings = wp.scaling.warnings;
    LinearSolver solver(config);

    ExplicitIterate z = explicit_initial_point(work);
    ExplicitIterate best = z;
    double best_err = std::numeric_limits<double>::infinity();
    bool spectrum = config.trace_level == TraceLevel::spectrum;
    Vector prev_diag;
    bool have_prev = false;
    SolveStatus status = SolveStatus::max_iters;
    int iter = 0;
    ExplicitKkt kkt;

    for (;;) {
        detail::Stopwatch clock;
        const double gap = duality_gap(z.lambda, z.s);
        const double mu = detail::barrier_parameter(config.sigma, gap, m);
        const ExplicitIterate orig = unscale_solution(z, wp.scaling);
        const double err = detail::kkt_error(problem, orig);
        if (err < best_err) {
            best_err = err;
            best = z;
        }
        if (err <= config.tol) {
            status = SolveStatus::converged;
            break;
        }
        if (iter >= config.max_iters) {
            status = SolveStatus::max_iters;
            break;
        }
        ++iter;

        if (iter == 1) {
            kkt = assemble_explicit(work, z, mu);
        } else {
            update_explicit(kkt, work, z, mu);
        }
        IterationRecord rec;
        rec.iter = iter;
        rec.mu = mu;
        rec.gap = gap;
        const ResidualVector r = residuals(work, z, mu);
        rec.r_x = inf_norm(r.r_x);
        rec.r_i = inf_norm(r.r_i);
        rec.r_e = inf_norm(r.r_e);
        rec.r_comp = inf_norm(r.r_comp);
        rec.residual = err;
        if (config.trace_level == TraceLevel::spectrum) {
            detail::fill_spectrum(rec, kkt, prev_diag, have_prev, config.spectrum_cap, spectrum, summary.warnings);
            prev_diag = kkt.dual_diagonal();
            have_prev = true;
        }

        LinearSolveReport lrep;
        NewtonStep dz;
        try {
            dz = newton_direction(work, z, r, kkt, solver, lrep);
        } catch (const NumericalError& e) {
            throw NumericalError("explicit IPM iteration " + std::to_string(iter) + ": " + e.what());
        }
        rec.factorized = lrep.factorized;
        rec.krylov_iters = lrep.krylov_iters;
        rec.warnings = lrep.warnings;
        for (const auto& w : lrep.warnings) {
            detail::add_warning(summary.warnings, w);
        }
        summary.factorizations += lrep.factorized ? 1 : 0;
        summary.krylov_total += lrep.krylov_iters;

        if (config.verify_steps && config.linear_strategy == LinearStrategy::direct &&
            config.precision == Precision::f64) {
            const double nr = explicit_newton_residual(work, z, mu, dz);
            if (nr > 1e-8) {
                throw NumericalError("explicit IPM iteration " + std::to_string(iter) +
                                     ": Newton system residual " + std::to_string(nr) + " exceeds 1e-8");
            }
        }

        double alpha = 1.0;
        if (m > 0) {
            alpha = std::min(detail::fraction_to_boundary(z.lambda, dz.dlambda, detail::kFractionToBoundary),
                             detail::fraction_to_boundary(z.s, dz.ds, detail::kFractionToBoundary));
        }
        const double phi0 = r.norm_inf();
        bool accepted = false;
        ExplicitIterate trial;
        while (alpha >= detail::kMinStep) {
            trial = add_step(z, dz, alpha);
            if (merit(work, trial, mu) <= (1.0 - detail::kArmijo * alpha) * phi0) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        rec.alpha = accepted ? alpha : 0.0;
        rec.wall_time_ns = clock.elapsed_ns();
        trace.record_iteration(std::move(rec));
        if (!accepted) {
            status = SolveStatus::stalled;
            break;
        }
        z = std::move(trial);
    }

    const ExplicitIterate& final_z = status == SolveStatus::converged ? z : best;
    ExplicitResult out;
    out.iterate = unscale_solution(final_z, wp.scaling);
    summary.status = status;
    summary.iterations = iter;
    summary.residual = residuals(problem, out.iterate, 0.0).norm_inf();
    summary.gap = duality_gap(out.iterate.lambda, out.iterate.s);
    summary.objective = problem.objective(out.iterate.x);
    summary.ordering_computations = solver.ordering_computations();
    out.trace = std::move(trace);
    return out;
}

} // namespace ipqp
