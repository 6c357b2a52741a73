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

#ifndef IPQP_LINALG_DENSE_EIGEN_HPP
#define IPQP_LINALG_DENSE_EIGEN_HPP

#include <Eigen/Dense>

namespace ipqp::linalg
{

inline constexpr int kDefaultEigenCap = 500;

struct SymmetricEigen
{
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns, empty unless requested
    int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// 1e-12 ||M||_F. Throws InvalidInput above `cap` rows.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& M, bool want_vectors, int cap = kDefaultEigenCap);

Eigen::VectorXd dense_symmetric_eigenvalues(const Eigen::MatrixXd& M, int cap = kDefaultEigenCap);

} // namespace ipqp::linalg

#endif // IPQP_LINALG_DENSE_EIGEN_HPP
