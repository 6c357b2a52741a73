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

#ifndef IPQP_LINALG_MINRES_HPP
#define IPQP_LINALG_MINRES_HPP

#include <functional>
#include <vector>

#include "ipqp/linalg/sparse_symmetric.hpp"

namespace ipqp::linalg
{

/// y = Op(x). The output vector is sized by the caller.
template <std::floating_point T>
using LinearOperator = std::function<void(const VectorT<T>& x, VectorT<T>& y)>;

struct KrylovReport
{
    int iterations = 0;
    // Preconditioned residual estimate relative to the preconditioned norm
    // of the right-hand side.
    double relative_residual = 0.0;
    bool converged = false;
    // Preconditioned residual estimate after each iteration.
    std::vector<double> residual_history;
};

struct MinresOptions
{
    double rtol = 1e-10;
    double atol = 1e-10;
    int max_iters = 0; // 0 selects 10 * dim
};

template <std::floating_point T>
struct MinresResult
{
    VectorT<T> x;
    KrylovReport report;
};

/**
 * Preconditioned MINRES (Paige-Saunders) from a zero initial guess.
 *
 * Op must be symmetric, possibly indefinite; precond must be symmetric
 * positive definite (an empty function means no preconditioning). Stops when
 * the preconditioned residual estimate drops to max(rtol * ||b||_P, atol) or
 * the Lanczos process breaks down.
 */
template <std::floating_point T>
MinresResult<T> minres(const LinearOperator<T>& op, const VectorT<T>& rhs, const LinearOperator<T>& precond,
                       const MinresOptions& options = {});

template <std::floating_point T>
LinearOperator<T> as_operator(const SparseSymmetric<T>& M)
{
    return [&M](const VectorT<T>& x, VectorT<T>& y) {
        y.setZero(M.dim());
        M.multiply_add(x, y);
    };
}

} // namespace ipqp::linalg

#endif // IPQP_LINALG_MINRES_HPP
