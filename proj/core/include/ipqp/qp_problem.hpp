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

#ifndef IPQP_QP_PROBLEM_HPP
#define IPQP_QP_PROBLEM_HPP

#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ipqp
{

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/**
 * Convex QP in the form
 *
 *     min  1/2 x'Qx + q'x
 *     s.t. Ax >= b
 *          Cx  = d
 *
 * Q must be given with both triangles; it is symmetrized on construction so
 * tiny asymmetries from upstream arithmetic do not leak into the KKT matrices.
 * All matrices are stored compressed-column with sorted row indices.
 */
class QpProblem
{
public:
    QpProblem(SparseMatrix Q, Vector q, SparseMatrix A, Vector b, SparseMatrix C, Vector d,
              std::string name = {});

    int n() const { return static_cast<int>(q_.size()); }
    int m() const { return static_cast<int>(b_.size()); }
    int p() const { return static_cast<int>(d_.size()); }

    const SparseMatrix& Q() const { return Q_; }
    const Vector& q() const { return q_; }
    const SparseMatrix& A() const { return A_; }
    const Vector& b() const { return b_; }
    const SparseMatrix& C() const { return C_; }
    const Vector& d() const { return d_; }

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    // Constant term carried from file formats that support it; not part of
    // any optimality condition.
    double objective_constant() const { return objective_constant_; }
    void set_objective_constant(double c) { objective_constant_ = c; }

    double objective(const Vector& x) const;

private:
    SparseMatrix Q_;
    Vector q_;
    SparseMatrix A_;
    Vector b_;
    SparseMatrix C_;
    Vector d_;
    std::string name_;
    double objective_constant_ = 0.0;
};

struct ExplicitIterate
{
    Vector x;
    Vector lambda;
    Vector gamma;
    Vector s;
};

struct ImplicitIterate
{
    Vector x;
    Vector lambda;
    Vector gamma;
    Vector s;
    Vector v;

    ExplicitIterate primal_dual() const { return {x, lambda, gamma, s}; }
};

/// KKT residual blocks. For the explicit formulation r_comp = lambda.*s - mu;
/// for the implicit one it stacks (r_lambda, r_s) and has length 2m.
struct ResidualVector
{
    Vector r_x;
    Vector r_i;
    Vector r_e;
    Vector r_comp;

    double norm_inf() const;
};

// Infinity norm that returns 0 for empty vectors.
double inf_norm(const Vector& v);

/// KKT residual of an explicit primal-dual point, relaxed by mu; mu = 0 gives the
/// unrelaxed KKT residual.
ResidualVector residuals(const QpProblem& problem, const ExplicitIterate& z, double mu);

/// lambda' s. Zero when there are no inequalities.
double duality_gap(const Vector& lambda, const Vector& s);

/// Throws InvalidInput when any block has the wrong size or contains NaN.
void check_iterate(const QpProblem& problem, const ExplicitIterate& z);
void check_iterate(const QpProblem& problem, const ImplicitIterate& z);

/// Builds a compressed sparse matrix from a dense one, dropping exact zeros.
SparseMatrix sparse_from_dense(const Eigen::MatrixXd& dense);

} // namespace ipqp

#endif // IPQP_QP_PROBLEM_HPP
