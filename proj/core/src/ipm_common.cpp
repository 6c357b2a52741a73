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

#include "ipm_common.hpp"

#include <cmath>
#include <limits>

#include "ipqp/linalg/ldlt.hpp"

namespace ipqp::detail
{

Vector min_norm_equality_point(const QpProblem& problem)
{
    const int n = problem.n();
    const int p = problem.p();
    if (p == 0) {
        return Vector::Zero(n);
    }
    // [ I  -C' ] [x]   [ 0  ]
    // [ -C  0  ] [y] = [ -d ]   gives x = C'y with Cx = d.
    SparseMatrix I(n, n);
    I.setIdentity();
    const SparseMatrix A0(0, n);
    Vector rhs = Vector::Zero(n + p);
    rhs.tail(p) = -problem.d();
    const KktSystem kkt = build_kkt(Formulation::explicit_e, I, A0, problem.C(), Vector(0), rhs);
    const auto F = linalg::ldlt_factor(kkt.matrix, 1e-9 * kkt.matrix.inf_norm());
    return F.solve(kkt.rhs).head(n);
}

double fraction_to_boundary(const Vector& y, const Vector& dy, double tau)
{
    double alpha_max = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (dy[i] < 0.0) {
            alpha_max = std::min(alpha_max, -y[i] / dy[i]);
        }
    }
    return std::min(1.0, tau * alpha_max);
}

WorkingProblem prepare(const QpProblem& problem, const SolverConfig& config)
{
    if (config.equilibrate) {
        EquilibratedProblem eq = ruiz_equilibrate(problem);
        return {std::move(eq.problem), std::move(eq.scaling)};
    }
    return {problem, ScalingState::identity(problem.n(), problem.m(), problem.p())};
}

double barrier_parameter(double sigma, double gap, int m)
{
    if (m == 0) {
        return 0.0;
    }
    return std::max(sigma * gap / m, kMinMu);
}

double kkt_error(const QpProblem& original, const ExplicitIterate& z)
{
    const ResidualVector r = residuals(original, z, 0.0);
    return std::max(r.norm_inf(), std::abs(duality_gap(z.lambda, z.s)));
}

void fill_spectrum(IterationRecord& rec, const KktSystem& kkt, const Vector& prev_diag, bool have_prev, int cap,
                   bool& enabled, std::vector<std::string>& warnings)
{
    const Vector diag = kkt.dual_diagonal();
    rec.matrix_delta = have_prev ? inf_norm(diag - prev_diag) : 0.0;
    if (!enabled) {
        return;
    }
    if (kkt.dim() > cap) {
        enabled = false;
        add_warning(warnings, "spectrum tracing disabled: KKT dimension " + std::to_string(kkt.dim()) +
                                  " exceeds the dense cap of " + std::to_string(cap));
        return;
    }
    const SpectrumMetrics sm = spectrum_metrics(kkt.matrix, cap);
    rec.eig_min = sm.eig_min_abs;
    rec.eig_max = sm.eig_max_abs;
    rec.cond = sm.cond;
    rec.zero_eigs = sm.zero_count;
}

} // namespace ipqp::detail
