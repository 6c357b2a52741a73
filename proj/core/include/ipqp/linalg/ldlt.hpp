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

#ifndef IPQP_LINALG_LDLT_HPP
#define IPQP_LINALG_LDLT_HPP

#include <utility>
#include <vector>

#include "ipqp/errors.hpp"
#include "ipqp/linalg/sparse_symmetric.hpp"

namespace ipqp::linalg
{

/*
 * Sparse symmetric indefinite LDL' factorization.
 *
 * Right-looking elimination on a dynamically updated sparse structure.
 * Candidates are taken in a fill-reducing order; each step applies the
 * Bunch-Kaufman test (alpha = (1 + sqrt(17)) / 8) to pick a 1x1 pivot on the
 * candidate k, a 1x1 pivot on the row r holding the largest off-diagonal of
 * column k, or a 2x2 pivot on (k, r). Since pivots are chosen numerically,
 * only the ordering is reusable across matrices with the same pattern.
 *
 * A 1x1 pivot with |d| <= pivot_tol * max(1, ||primal rows of M||_inf) is
 * replaced by sign(i) * static_reg, where sign(i) is the block sign of
 * index i. With static_reg = 0 such a pivot raises
 * SingularMatrix.
 */

struct LdltOptions
{
    double pivot_tol = 1e-13;
    // Iterative refinement sweeps applied by solve() when the relative
    // residual exceeds 64 eps(T).
    int refinement_steps = 1;
};

template <std::floating_point T>
struct PivotBlock
{
    int k = -1;
    int r = -1; // -1 for a 1x1 pivot
    T d11 = T(0);
    T d21 = T(0);
    T d22 = T(0);
    bool regularized = false;
    std::vector<std::pair<int, T>> lk; // column of L for k, original indices
    std::vector<std::pair<int, T>> lr; // column of L for r (2x2 only)
};

struct LdltSolveInfo
{
    double relative_residual = 0.0;
    int refinement_steps = 0;
};

template <std::floating_point T>
class Factorization;

template <std::floating_point T>
Factorization<T> ldlt_factor(const SparseSymmetric<T>& M, T static_reg, const std::vector<int>& order,
                             const LdltOptions& options = {});

template <std::floating_point T>
class Factorization
{
public:
    int dim() const { return matrix_.dim(); }
    /// Original indices in elimination order; 2x2 pairs are adjacent.
    std::vector<int> permutation() const;
    const Inertia& inertia() const { return inertia_; }
    /// Regularization magnitude used, 0 if no pivot was replaced.
    T regularization() const { return regularized_pivots_ > 0 ? static_reg_ : T(0); }
    int regularized_pivots() const { return regularized_pivots_; }
    int two_by_two_pivots() const { return two_by_two_; }
    const std::vector<PivotBlock<T>>& blocks() const { return blocks_; }
    const SparseSymmetric<T>& matrix() const { return matrix_; }
    std::size_t factor_nonzeros() const;

    /// Solves with the factors only.
    VectorT<T> solve_raw(const VectorT<T>& rhs) const;
    /// Solves and refines against the unregularized matrix.
    VectorT<T> solve(const VectorT<T>& rhs, LdltSolveInfo* info = nullptr) const;

    /// L D L' in original indexing (includes any regularization).
    DenseT<T> reconstruct() const;

    template <std::floating_point U>
    friend Factorization<U> ldlt_factor(const SparseSymmetric<U>& M, U static_reg, const std::vector<int>& order,
                                        const LdltOptions& options);

private:
    SparseSymmetric<T> matrix_;
    std::vector<PivotBlock<T>> blocks_;
    Inertia inertia_;
    T static_reg_ = T(0);
    int regularized_pivots_ = 0;
    int two_by_two_ = 0;
    LdltOptions options_;
};

/// 1e-9 * max(1, infinity norm of the primal rows).
template <std::floating_point T>
T default_static_reg(const SparseSymmetric<T>& M)
{
    return T(1e-9) * std::max(T(1), M.inf_norm_of_sign(+1));
}

/// Computes a fresh fill-reducing order.
template <std::floating_point T>
Factorization<T> ldlt_factor(const SparseSymmetric<T>& M, T static_reg, const LdltOptions& options = {});

template <std::floating_point T>
VectorT<T> ldlt_solve(const Factorization<T>& F, const VectorT<T>& rhs, LdltSolveInfo* info = nullptr)
{
    return F.solve(rhs, info);
}

} // namespace ipqp::linalg

#endif // IPQP_LINALG_LDLT_HPP
