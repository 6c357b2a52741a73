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

#ifndef IPQP_TESTS_TEST_SUPPORT_HPP
#define IPQP_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "ipqp/qp_problem.hpp"

namespace ipqp::testing
{

inline std::string data_path(const std::string& file)
{
    return std::string(IPQP_DATA_DIR) + "/maros_meszaros/" + file;
}

inline Eigen::MatrixXd random_matrix(std::mt19937& rng, int rows, int cols)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd M(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            M(i, j) = u(rng);
        }
    }
    return M;
}

inline Vector random_vector(std::mt19937& rng, int n, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = u(rng);
    }
    return v;
}

// Strictly convex QP with a strictly feasible point x0.
inline QpProblem random_qp(std::mt19937& rng, int n, int m, int p)
{
    const Eigen::MatrixXd R = random_matrix(rng, n, n);
    const Eigen::MatrixXd Q = R.transpose() * R + Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd A = random_matrix(rng, m, n);
    const Eigen::MatrixXd C = random_matrix(rng, p, n);
    const Vector x0 = random_vector(rng, n);
    const Vector b = A * x0 - random_vector(rng, m, 0.1, 1.0);
    const Vector d = C * x0;
    return QpProblem(sparse_from_dense(Q), random_vector(rng, n), sparse_from_dense(A), b, sparse_from_dense(C), d,
                     "random");
}

inline ExplicitIterate random_explicit_iterate(std::mt19937& rng, const QpProblem& qp)
{
    return {random_vector(rng, qp.n()), random_vector(rng, qp.m(), 0.1, 2.0), random_vector(rng, qp.p()),
            random_vector(rng, qp.m(), 0.1, 2.0)};
}

inline ImplicitIterate random_implicit_iterate(std::mt19937& rng, const QpProblem& qp)
{
    const ExplicitIterate z = random_explicit_iterate(rng, qp);
    return {z.x, z.lambda, z.gamma, z.s, random_vector(rng, qp.m(), -3.0, 3.0)};
}

inline double rel_diff(const Vector& a, const Vector& b)
{
    const double scale = std::max(1.0, b.lpNorm<Eigen::Infinity>());
    return a.size() == 0 ? 0.0 : (a - b).lpNorm<Eigen::Infinity>() / scale;
}

} // namespace ipqp::testing

#endif // IPQP_TESTS_TEST_SUPPORT_HPP
