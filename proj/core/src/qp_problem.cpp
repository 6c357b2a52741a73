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

#include "ipqp/qp_problem.hpp"

#include <cmath>

#include "ipqp/errors.hpp"

namespace ipqp
{

namespace
{

std::string dims(Eigen::Index r, Eigen::Index c)
{
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_finite(const Vector& v, const char* block)
{
    if (!v.allFinite()) {
        throw InvalidInput(std::string("non-finite entry in ") + block);
    }
}

void require_finite(const SparseMatrix& M, const char* block)
{
    for (int k = 0; k < M.nonZeros(); ++k) {
        if (!std::isfinite(M.valuePtr()[k])) {
            throw InvalidInput(std::string("non-finite entry in ") + block);
        }
    }
}

void require_size(const Vector& v, Eigen::Index size, const char* block)
{
    if (v.size() != size) {
        throw InvalidInput(std::string("block ") + block + " has length " + std::to_string(v.size()) +
                           ", expected " + std::to_string(size));
    }
}

} // namespace

QpProblem::QpProblem(SparseMatrix Q, Vector q, SparseMatrix A, Vector b, SparseMatrix C, Vector d,
                     std::string name)
    : q_(std::move(q)), b_(std::move(b)), d_(std::move(d)), name_(std::move(name))
{
    const Eigen::Index n = q_.size();
    if (Q.rows() != n || Q.cols() != n) {
        throw InvalidInput("Q is " + dims(Q.rows(), Q.cols()) + ", expected " + dims(n, n));
    }
    if (A.rows() != b_.size() || A.cols() != n) {
        throw InvalidInput("A is " + dims(A.rows(), A.cols()) + ", expected " + dims(b_.size(), n));
    }
    if (C.rows() != d_.size() || C.cols() != n) {
        throw InvalidInput("C is " + dims(C.rows(), C.cols()) + ", expected " + dims(d_.size(), n));
    }
    require_finite(Q, "Q");
    require_finite(q_, "q");
    require_finite(A, "A");
    require_finite(b_, "b");
    require_finite(C, "C");
    require_finite(d_, "d");

    SparseMatrix Qt = Q.transpose();
    Q_ = 0.5 * (Q + Qt);
    Q_.prune(0.0);
    Q_.makeCompressed();
    A_ = std::move(A);
    A_.makeCompressed();
    C_ = std::move(C);
    C_.makeCompressed();
}

double QpProblem::objective(const Vector& x) const
{
    return 0.5 * x.dot(Q_ * x) + q_.dot(x) + objective_constant_;
}

double ResidualVector::norm_inf() const
{
    return std::max({inf_norm(r_x), inf_norm(r_i), inf_norm(r_e), inf_norm(r_comp)});
}

double inf_norm(const Vector& v)
{
    return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
}

void check_iterate(const QpProblem& problem, const ExplicitIterate& z)
{
    require_size(z.x, problem.n(), "x");
    require_size(z.lambda, problem.m(), "lambda");
    require_size(z.gamma, problem.p(), "gamma");
    require_size(z.s, problem.m(), "s");
    require_finite(z.x, "x");
    require_finite(z.lambda, "lambda");
    require_finite(z.gamma, "gamma");
    require_finite(z.s, "s");
}

void check_iterate(const QpProblem& problem, const ImplicitIterate& z)
{
    check_iterate(problem, z.primal_dual());
    require_size(z.v, problem.m(), "v");
    require_finite(z.v, "v");
}

ResidualVector residuals(const QpProblem& problem, const ExplicitIterate& z, double mu)
{
    check_iterate(problem, z);
    if (!(mu >= 0.0)) {
        throw InvalidInput("barrier parameter must be non-negative");
    }
    ResidualVector r;
    r.r_x = problem.Q() * z.x + problem.q() - problem.A().transpose() * z.lambda -
            problem.C().transpose() * z.gamma;
    r.r_i = problem.A() * z.x - problem.b() - z.s;
    r.r_e = problem.C() * z.x - problem.d();
    r.r_comp = z.lambda.cwiseProduct(z.s).array() - mu;
    return r;
}

double duality_gap(const Vector& lambda, const Vector& s)
{
    if (lambda.size() != s.size()) {
        throw InvalidInput("duality_gap: lambda has length " + std::to_string(lambda.size()) +
                           " but s has length " + std::to_string(s.size()));
    }
    return lambda.size() == 0 ? 0.0 : lambda.dot(s);
}

SparseMatrix sparse_from_dense(const Eigen::MatrixXd& dense)
{
    return dense.sparseView(0.0, 0.0);
}

} // namespace ipqp
