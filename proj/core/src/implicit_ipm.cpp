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

#include "ipqp/implicit_ipm.hpp"

#include <algorithm>
#include <cmath>

#include "implicit_loop.hpp"
#include "ipm_common.hpp"
#include "ipqp/inexact.hpp"

namespace ipqp
{

namespace
{

// Retraction at mu; with no inequalities there is nothing to evaluate.
RetractionEval retraction_at(const ImplicitIterate& z, double mu)
{
    if (z.v.size() == 0) {
        RetractionEval e;
        e.mu = mu;
        e.b_plus = e.b_minus = e.db_plus = e.db_minus = Vector(0);
        return e;
    }
    return evaluate_retraction(z.v, mu);
}

ImplicitIterate add_step(const ImplicitIterate& z, const NewtonStep& dz, double alpha)
{
    return {z.x + alpha * dz.dx, z.lambda + alpha * dz.dlambda, z.gamma + alpha * dz.dgamma, z.s + alpha * dz.ds,
            z.v + alpha * dz.dv};
}

SparseMatrix implicit_hessian_block(const QpProblem& problem)
{
    const SparseMatrix AtA = problem.A().transpose() * problem.A();
    SparseMatrix H = problem.Q() - AtA;
    H.makeCompressed();
    return H;
}

} // namespace

ResidualVector implicit_residuals(const QpProblem& problem, const ImplicitIterate& z, double mu)
{
    check_iterate(problem, z);
    const RetractionEval e = retraction_at(z, mu);
    ResidualVector r = residuals(problem, z.primal_dual(), 0.0);
    const int m = problem.m();
    r.r_comp.resize(2 * m);
    r.r_comp.head(m) = z.lambda - e.b_plus;
    r.r_comp.tail(m) = z.s - e.b_minus;
    return r;
}

Vector implicit_rhs(const QpProblem& problem, const ImplicitIterate& z, double mu)
{
    const ResidualVector r = implicit_residuals(problem, z, mu);
    const int n = problem.n();
    const int m = problem.m();
    const int p = problem.p();
    const auto r_lambda = r.r_comp.head(m);
    const auto r_s = r.r_comp.tail(m);
    Vector rhs(n + m + p);
    rhs.head(n) = -r.r_x + problem.A().transpose() * (r.r_i - r_lambda + r_s);
    rhs.segment(n, m) = r.r_i + r_s;
    rhs.tail(p) = r.r_e;
    return rhs;
}

ImplicitKkt assemble_implicit(const QpProblem& problem, const ImplicitIterate& z, double mu)
{
    check_iterate(problem, z);
    const RetractionEval e = retraction_at(z, mu);
    return build_kkt(Formulation::implicit_j, implicit_hessian_block(problem), problem.A(), problem.C(), e.db_minus,
                     implicit_rhs(problem, z, mu));
}

void update_implicit(ImplicitKkt& kkt, const QpProblem& problem, const ImplicitIterate& z, double mu)
{
    check_iterate(problem, z);
    if (kkt.formulation != Formulation::implicit_j) {
        throw InvalidInput("update_implicit called on an explicit system");
    }
    kkt.set_dual_diagonal(retraction_at(z, mu).db_minus);
    kkt.rhs = implicit_rhs(problem, z, mu);
}

NewtonStep recover_implicit_step(const QpProblem& problem, const ImplicitIterate& z, double mu,
                                 const Vector& condensed)
{
    const int n = problem.n();
    const int m = problem.m();
    const int p = problem.p();
    if (condensed.size() != n + m + p) {
        throw InvalidInput("condensed solution has the wrong length");
    }
    const RetractionEval e = retraction_at(z, mu);
    const ResidualVector r = implicit_residuals(problem, z, mu);
    NewtonStep dz;
    dz.dx = condensed.head(n);
    dz.dv = condensed.segment(n, m);
    dz.dgamma = condensed.tail(p);
    dz.dlambda = e.db_plus.cwiseProduct(dz.dv) - r.r_comp.head(m);
    dz.ds = -e.db_minus.cwiseProduct(dz.dv) - r.r_comp.tail(m);
    return dz;
}

double implicit_newton_residual(const QpProblem& problem, const ImplicitIterate& z, double mu, const NewtonStep& dz)
{
    const RetractionEval e = retraction_at(z, mu);
    const ResidualVector r = implicit_residuals(problem, z, mu);
    const int m = problem.m();
    const Vector row1 = problem.Q() * dz.dx - problem.A().transpose() * dz.dlambda -
                        problem.C().transpose() * dz.dgamma + r.r_x;
    const Vector row2 = problem.A() * dz.dx - dz.ds + r.r_i;
    const Vector row3 = problem.C() * dz.dx + r.r_e;
    const Vector row4 = dz.dlambda - e.db_plus.cwiseProduct(dz.dv) + r.r_comp.head(m);
    const Vector row5 = dz.ds + e.db_minus.cwiseProduct(dz.dv) + r.r_comp.tail(m);
    const double num =
        std::max({inf_norm(row1), inf_norm(row2), inf_norm(row3), inf_norm(row4), inf_norm(row5)});
    const double den = r.norm_inf();
    return den > 0.0 ? num / den : num;
}

ImplicitStep implicit_step(const QpProblem& problem, const ImplicitIterate& z, double mu, LinearSolver& solver)
{
    const ImplicitKkt kkt = assemble_implicit(problem, z, mu);
    ImplicitStep out;
    const Vector sol = solver.solve(kkt, out.report.linear);
    out.dz = recover_implicit_step(problem, z, mu, sol);
    out.report.newton_residual = implicit_newton_residual(problem, z, mu, out.dz);
    return out;
}

ImplicitStep implicit_step(const QpProblem& problem, const ImplicitIterate& z, double mu, const SolverConfig& config)
{
    LinearSolver solver(config);
    return implicit_step(problem, z, mu, solver);
}

ImplicitIterate implicit_initial_point(const QpProblem& problem)
{
    const ExplicitIterate e = explicit_initial_point(problem);
    return {e.x, e.lambda, e.gamma, e.s, Vector::Zero(problem.m())};
}

namespace detail
{

ImplicitResult run_implicit(const QpProblem& problem, const SolverConfig& config, const CondensedSolver& solve,
                            const std::function<int()>& ordering_computations)
{
    const WorkingProblem wp = prepare(problem, config);
    const QpProblem& work = wp.problem;
    const int m = work.m();

    SolveTrace trace(make_header(config, problem.name(), problem.n(), problem.m(), problem.p()));
    TraceSummary& summary = trace.summary();
    summary.warnings = wp.scaling.warnings;

    ImplicitIterate z = implicit_initial_point(work);
    ImplicitIterate best = z;
    double best_err = std::numeric_limits<double>::infinity();
    bool spectrum = config.trace_level == TraceLevel::spectrum;
    Vector prev_diag;
    bool have_prev = false;
    SolveStatus status = SolveStatus::max_iters;
    int iter = 0;
    ImplicitKkt kkt;

    for (;;) {
        Stopwatch clock;
        const double gap = duality_gap(z.lambda, z.s);
        const double mu = barrier_parameter(config.sigma, gap, m);
        const ImplicitIterate orig = unscale_solution(z, wp.scaling);
        const double err = kkt_error(problem, orig.primal_dual());
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
            kkt = assemble_implicit(work, z, mu);
        } else {
            update_implicit(kkt, work, z, mu);
        }
        IterationRecord rec;
        rec.iter = iter;
        rec.mu = mu;
        rec.gap = gap;
        const ResidualVector r = implicit_residuals(work, z, mu);
        rec.r_x = inf_norm(r.r_x);
        rec.r_i = inf_norm(r.r_i);
        rec.r_e = inf_norm(r.r_e);
        rec.r_comp = inf_norm(r.r_comp);
        rec.residual = err;
        if (config.trace_level == TraceLevel::spectrum) {
            fill_spectrum(rec, kkt, prev_diag, have_prev, config.spectrum_cap, spectrum, summary.warnings);
            prev_diag = kkt.dual_diagonal();
            have_prev = true;
            std::vector<double> db(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                db[static_cast<std::size_t>(i)] = -kkt.matrix.diagonal(work.n() + i);
            }
            rec.db_minus = std::move(db);
        }

        const double phi0 = r.norm_inf();
        bool accepted = false;
        double alpha = 1.0;
        ImplicitIterate trial;
        for (bool force_fresh : {false, true}) {
            CondensedSolve cs;
            try {
                cs = solve(work, z, mu, kkt, iter, force_fresh);
            } catch (const NumericalError& e) {
                throw NumericalError("implicit IPM iteration " + std::to_string(iter) + ": " + e.what());
            }
            rec.factorized = rec.factorized || cs.report.factorized;
            rec.krylov_iters += cs.report.krylov_iters;
            summary.factorizations += cs.report.factorized ? 1 : 0;
            summary.krylov_total += cs.report.krylov_iters;
            for (const auto& w : cs.report.warnings) {
                add_warning(rec.warnings, w);
                add_warning(summary.warnings, w);
            }
            for (const auto& w : cs.warnings) {
                add_warning(rec.warnings, w);
                add_warning(summary.warnings, w);
            }

            const NewtonStep dz = recover_implicit_step(work, z, mu, cs.solution);
            if (config.verify_steps && !cs.used_frozen && config.linear_strategy != LinearStrategy::minres &&
                config.precision == Precision::f64) {
                const double nr = implicit_newton_residual(work, z, mu, dz);
                if (nr > 1e-8) {
                    throw NumericalError("implicit IPM iteration " + std::to_string(iter) +
                                         ": Newton system residual " + std::to_string(nr) + " exceeds 1e-8");
                }
            }

            alpha = 1.0;
            while (alpha >= kMinStep) {
                trial = add_step(z, dz, alpha);
                if (implicit_residuals(work, trial, mu).norm_inf() <= (1.0 - kArmijo * alpha) * phi0) {
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (accepted || !cs.used_frozen) {
                break;
            }
            add_warning(rec.warnings, "frozen step rejected by the line search; refactorizing");
        }
        rec.alpha = accepted ? alpha : 0.0;

        if (accepted && m > 0) {
            // Entries pushed to or past zero by the linearized update are
            // reset onto the retraction, then floored against underflow.
            // Flooring alone at 1e-300 collapses the gap and the next mu.
            const RetractionEval b = evaluate_retraction(trial.v, mu);
            int clipped = 0;
            for (int i = 0; i < m; ++i) {
                if (!(trial.lambda[i] >= kPositivityFloor)) {
                    trial.lambda[i] = std::max(b.b_plus[i], kPositivityFloor);
                    ++clipped;
                }
                if (!(trial.s[i] >= kPositivityFloor)) {
                    trial.s[i] = std::max(b.b_minus[i], kPositivityFloor);
                    ++clipped;
                }
            }
            if (clipped > 0) {
                const std::string w = "positivity safeguard reset " + std::to_string(clipped) +
                                      " entries of lambda/s onto the retraction";
                rec.warnings.push_back(w);
                add_warning(summary.warnings, "positivity safeguard triggered");
            }
        }
        rec.wall_time_ns = clock.elapsed_ns();
        trace.record_iteration(std::move(rec));
        if (!accepted) {
            status = SolveStatus::stalled;
            break;
        }
        z = std::move(trial);
    }

    const ImplicitIterate& final_z = status == SolveStatus::converged ? z : best;
    ImplicitResult out;
    out.iterate = unscale_solution(final_z, wp.scaling);
    summary.status = status;
    summary.iterations = iter;
    summary.residual = residuals(problem, out.iterate.primal_dual(), 0.0).norm_inf();
    summary.gap = duality_gap(out.iterate.lambda, out.iterate.s);
    summary.objective = problem.objective(out.iterate.x);
    summary.ordering_computations = ordering_computations();
    out.trace = std::move(trace);
    return out;
}

} // namespace detail

ImplicitResult solve_implicit(const QpProblem& problem, const SolverConfig& config)
{
    config.validate();
    if (config.linear_strategy == LinearStrategy::inexact) {
        return solve_implicit_inexact(problem, config);
    }
    auto solver = std::make_shared<LinearSolver>(config);
    const detail::CondensedSolver solve = [solver](const QpProblem&, const ImplicitIterate&, double,
                                                   const ImplicitKkt& kkt, int, bool) {
        detail::CondensedSolve cs;
        cs.solution = solver->solve(kkt, cs.report);
        return cs;
    };
    return detail::run_implicit(problem, config, solve, [solver] { return solver->ordering_computations(); });
}

} // namespace ipqp
