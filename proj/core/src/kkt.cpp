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

#include "ipqp/kkt.hpp"

#include "ipqp/errors.hpp"

namespace ipqp
{

std::string to_string(Formulation f)
{
    return f == Formulation::explicit_e ? "explicit" : "implicit";
}

Vector KktSystem::dual_diagonal() const
{
    Vector D(m);
    for (int i = 0; i < m; ++i) {
        D[i] = -matrix.diagonal(n + i);
    }
    return D;
}

void KktSystem::set_dual_diagonal(const Vector& D)
{
    if (D.size() != m) {
        throw InvalidInput("dual diagonal has length " + std::to_string(D.size()) + ", expected " +
                           std::to_string(m));
    }
    for (int i = 0; i < m; ++i) {
        matrix.set_diagonal(n + i, -D[i]);
    }
}

KktSystem build_kkt(Formulation formulation, const SparseMatrix& H, const SparseMatrix& A, const SparseMatrix& C,
                    const Vector& D, Vector rhs)
{
    const int n = static_cast<int>(H.rows());
    const int m = static_cast<int>(A.rows());
    const int p = static_cast<int>(C.rows());
    if (H.cols() != n || A.cols() != n || C.cols() != n || D.size() != m || rhs.size() != n + m + p) {
        throw InvalidInput("build_kkt: inconsistent block dimensions");
    }
    std::vector<Eigen::Triplet<double, int>> trip;
    trip.reserve(static_cast<std::size_t>(H.nonZeros() + A.nonZeros() + C.nonZeros() + m));
    for (int j = 0; j < n; ++j) {
        for (SparseMatrix::InnerIterator it(H, j); it; ++it) {
            if (it.row() >= j) {
                trip.emplace_back(static_cast<int>(it.row()), j, it.value());
            }
        }
        for (SparseMatrix::InnerIterator it(A, j); it; ++it) {
            trip.emplace_back(n + static_cast<int>(it.row()), j, -it.value());
        }
        for (SparseMatrix::InnerIterator it(C, j); it; ++it) {
            trip.emplace_back(n + m + static_cast<int>(it.row()), j, -it.value());
        }
    }
    for (int i = 0; i < m; ++i) {
        trip.emplace_back(n + i, n + i, -D[i]);
    }
    const int N = n + m + p;
    SparseMatrix lower(N, N);
    lower.setFromTriplets(trip.begin(), trip.end());

    std::vector<int> signs(static_cast<std::size_t>(N), -1);
    std::fill(signs.begin(), signs.begin() + n, 1);

    KktSystem kkt;
    kkt.formulation = formulation;
    kkt.n = n;
    kkt.m = m;
    kkt.p = p;
    kkt.matrix = linalg::SparseSymmetric<double>(lower, std::move(signs));
    kkt.rhs = std::move(rhs);
    return kkt;
}

void NewtonStep::scale(double alpha)
{
    dx *= alpha;
    dlambda *= alpha;
    dgamma *= alpha;
    ds *= alpha;
    dv *= alpha;
}

} // namespace ipqp
