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

#include "ipqp/linalg/dense_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ipqp/errors.hpp"

namespace ipqp::linalg
{

namespace
{

double off_diagonal_norm(const Eigen::MatrixXd& A)
{
    double s = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        for (Eigen::Index i = 0; i < A.rows(); ++i) {
            if (i != j) {
                s += A(i, j) * A(i, j);
            }
        }
    }
    return std::sqrt(s);
}

} // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& M, bool want_vectors, int cap)
{
    if (M.rows() != M.cols()) {
        throw InvalidInput("eigenvalues: matrix must be square");
    }
    const Eigen::Index n = M.rows();
    if (n > cap) {
        throw InvalidInput("eigenvalues: dimension " + std::to_string(n) + " exceeds the dense cap of " +
                           std::to_string(cap) + "; disable spectrum tracing for this problem");
    }
    if (!M.allFinite()) {
        throw NumericalError("eigenvalues: matrix has a non-finite entry");
    }
    Eigen::MatrixXd A = 0.5 * (M + M.transpose());
    Eigen::MatrixXd V;
    if (want_vectors) {
        V = Eigen::MatrixXd::Identity(n, n);
    }
    const double target = 1e-12 * A.norm();
    SymmetricEigen out;
    constexpr int kMaxSweeps = 100;
    while (out.sweeps < kMaxSweeps && off_diagonal_norm(A) > target) {
        ++out.sweeps;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = A(k, p);
                    const double akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = A(p, k);
                    const double aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                if (want_vectors) {
                    for (Eigen::Index k = 0; k < n; ++k) {
                        const double vkp = V(k, p);
                        const double vkq = V(k, q);
                        V(k, p) = c * vkp - s * vkq;
                        V(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::sort(idx.begin(), idx.end(), [&A](Eigen::Index a, Eigen::Index b) { return A(a, a) < A(b, b); });
    out.values.resize(n);
    if (want_vectors) {
        out.vectors.resize(n, n);
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = A(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(k)]);
        if (want_vectors) {
            out.vectors.col(k) = V.col(idx[static_cast<std::size_t>(k)]);
        }
    }
    return out;
}

Eigen::VectorXd dense_symmetric_eigenvalues(const Eigen::MatrixXd& M, int cap)
{
    return jacobi_eigen(M, false, cap).values;
}

} // namespace ipqp::linalg
