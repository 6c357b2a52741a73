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

#include "ipqp/equilibration.hpp"

#include <cmath>
#include <set>

#include "ipqp/errors.hpp"

namespace ipqp
{

namespace
{

// Column-wise infinity norms of a column-major sparse matrix, max-accumulated
// into out.
void accumulate_col_norms(const SparseMatrix& M, Vector& out)
{
    for (int j = 0; j < M.outerSize(); ++j) {
        for (SparseMatrix::InnerIterator it(M, j); it; ++it) {
            out[j] = std::max(out[j], std::abs(it.value()));
        }
    }
}

void accumulate_row_norms(const SparseMatrix& M, Vector& out)
{
    for (int j = 0; j < M.outerSize(); ++j) {
        for (SparseMatrix::InnerIterator it(M, j); it; ++it) {
            out[it.row()] = std::max(out[it.row()], std::abs(it.value()));
        }
    }
}

SparseMatrix scale_rows_cols(const SparseMatrix& M, const Vector& rows, const Vector& cols, double factor)
{
    SparseMatrix out = M;
    for (int j = 0; j < out.outerSize(); ++j) {
        for (SparseMatrix::InnerIterator it(out, j); it; ++it) {
            it.valueRef() *= factor * rows[it.row()] * cols[j];
        }
    }
    return out;
}

bool within(const Vector& norms, double tol)
{
    for (Eigen::Index i = 0; i < norms.size(); ++i) {
        if (norms[i] > 0.0 && std::abs(1.0 - norms[i]) > tol) {
            return false;
        }
    }
    return true;
}

// 1/sqrt(norm), or 1 for a structurally zero line.
Vector ruiz_factors(const Vector& norms, const char* block, std::set<std::string>& warned,
                    std::vector<std::string>& warnings)
{
    Vector out(norms.size());
    for (Eigen::Index i = 0; i < norms.size(); ++i) {
        if (norms[i] > 0.0) {
            out[i] = 1.0 / std::sqrt(norms[i]);
        } else {
            out[i] = 1.0;
            std::string msg = std::string("equilibration: ") + block + " " + std::to_string(i) +
                              " is structurally zero; scaling left at 1";
            if (warned.insert(msg).second) {
                warnings.push_back(std::move(msg));
            }
        }
    }
    return out;
}

} // namespace

ScalingState ScalingState::identity(int n, int m, int p)
{
    ScalingState s;
    s.col = Vector::Ones(n);
    s.row_ineq = Vector::Ones(m);
    s.row_eq = Vector::Ones(p);
    s.objective = 1.0;
    return s;
}

bool ScalingState::is_identity(double tol) const
{
    auto near_one = [tol](const Vector& v) {
        return v.size() == 0 || (v.array() - 1.0).abs().maxCoeff() <= tol;
    };
    return near_one(col) && near_one(row_ineq) && near_one(row_eq) && std::abs(objective - 1.0) <= tol;
}

QpProblem apply_scaling(const QpProblem& problem, const ScalingState& sc)
{
    const double c = sc.objective;
    QpProblem out(scale_rows_cols(problem.Q(), sc.col, sc.col, c), c * sc.col.cwiseProduct(problem.q()),
                  scale_rows_cols(problem.A(), sc.row_ineq, sc.col, 1.0), sc.row_ineq.cwiseProduct(problem.b()),
                  scale_rows_cols(problem.C(), sc.row_eq, sc.col, 1.0), sc.row_eq.cwiseProduct(problem.d()),
                  problem.name());
    out.set_objective_constant(c * problem.objective_constant());
    return out;
}

EquilibratedProblem ruiz_equilibrate(const QpProblem& problem, int max_passes, double tol)
{
    if (max_passes < 1) {
        throw InvalidInput("ruiz_equilibrate: max_passes must be >= 1");
    }
    if (!(tol > 0.0)) {
        throw InvalidInput("ruiz_equilibrate: tol must be positive");
    }
    const int n = problem.n();
    const int m = problem.m();
    const int p = problem.p();
    ScalingState sc = ScalingState::identity(n, m, p);
    std::set<std::string> warned;

    SparseMatrix Q = problem.Q();
    SparseMatrix A = problem.A();
    SparseMatrix C = problem.C();
    for (int pass = 0; pass < max_passes; ++pass) {
        Vector col_norm = Vector::Zero(n);
        accumulate_col_norms(Q, col_norm);
        accumulate_col_norms(A, col_norm);
        accumulate_col_norms(C, col_norm);
        Vector row_a = Vector::Zero(m);
        accumulate_row_norms(A, row_a);
        Vector row_c = Vector::Zero(p);
        accumulate_row_norms(C, row_c);

        sc.passes = pass + 1;
        if (within(col_norm, tol) && within(row_a, tol) && within(row_c, tol)) {
            break;
        }
        const Vector dx = ruiz_factors(col_norm, "column", warned, sc.warnings);
        const Vector da = ruiz_factors(row_a, "inequality row", warned, sc.warnings);
        const Vector dc = ruiz_factors(row_c, "equality row", warned, sc.warnings);
        sc.col.array() *= dx.array();
        sc.row_ineq.array() *= da.array();
        sc.row_eq.array() *= dc.array();
        Q = scale_rows_cols(Q, dx, dx, 1.0);
        A = scale_rows_cols(A, da, dx, 1.0);
        C = scale_rows_cols(C, dc, dx, 1.0);
    }

    const double q_norm = inf_norm(sc.col.cwiseProduct(problem.q()));
    sc.objective = 1.0 / std::max(1.0, q_norm);
    QpProblem scaled = apply_scaling(problem, sc);
    return {std::move(scaled), std::move(sc)};
}

ExplicitIterate unscale_solution(const ExplicitIterate& z, const ScalingState& sc)
{
    ExplicitIterate out;
    out.x = sc.col.cwiseProduct(z.x);
    out.lambda = sc.row_ineq.cwiseProduct(z.lambda) / sc.objective;
    out.gamma = sc.row_eq.cwiseProduct(z.gamma) / sc.objective;
    out.s = z.s.cwiseQuotient(sc.row_ineq);
    return out;
}

ImplicitIterate unscale_solution(const ImplicitIterate& z, const ScalingState& sc)
{
    const ExplicitIterate pd = unscale_solution(z.primal_dual(), sc);
    return {pd.x, pd.lambda, pd.gamma, pd.s, z.v};
}

ExplicitIterate scale_iterate(const ExplicitIterate& z, const ScalingState& sc)
{
    ExplicitIterate out;
    out.x = z.x.cwiseQuotient(sc.col);
    out.lambda = sc.objective * z.lambda.cwiseQuotient(sc.row_ineq);
    out.gamma = sc.objective * z.gamma.cwiseQuotient(sc.row_eq);
    out.s = sc.row_ineq.cwiseProduct(z.s);
    return out;
}

ImplicitIterate scale_iterate(const ImplicitIterate& z, const ScalingState& sc)
{
    const ExplicitIterate pd = scale_iterate(z.primal_dual(), sc);
    return {pd.x, pd.lambda, pd.gamma, pd.s, z.v};
}

} // namespace ipqp
