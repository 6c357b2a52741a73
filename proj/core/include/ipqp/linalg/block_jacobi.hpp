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

#ifndef IPQP_LINALG_BLOCK_JACOBI_HPP
#define IPQP_LINALG_BLOCK_JACOBI_HPP

#include <string>
#include <vector>

#include "ipqp/linalg/minres.hpp"
#include "ipqp/linalg/sparse_symmetric.hpp"

namespace ipqp::linalg
{

struct BlockJacobiOptions
{
    // A block whose smallest |eigenvalue| is at most singular_rtol times its
    // largest is treated as singular and replaced by the identity.
    double singular_rtol = 1e-14;
    // Blocks above this size use their absolute diagonal instead of a dense
    // eigendecomposition.
    int dense_cap = 500;
};

/**
 * Inverse of the block diagonal of |M|, where |B| = V |Lambda| V' for each
 * symmetric diagonal block B = V Lambda V'. The result is symmetric positive
 * definite whenever every block is nonsingular.
 */
template <std::floating_point T>
class BlockJacobi
{
public:
    /// `blocks` lists consecutive block sizes; zero-size blocks are skipped.
    BlockJacobi(const SparseSymmetric<T>& M, const std::vector<int>& blocks, const BlockJacobiOptions& options = {});

    void apply(const VectorT<T>& x, VectorT<T>& y) const;
    LinearOperator<T> as_operator() const;

    int dim() const { return dim_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    /// Dense representation of the preconditioner (testing aid).
    DenseT<T> to_dense() const;

private:
    struct Block
    {
        int offset = 0;
        int size = 0;
        bool diagonal = false;
        DenseT<T> inverse;  // dense path
        VectorT<T> inv_diag; // diagonal path
    };

    int dim_ = 0;
    std::vector<Block> blocks_;
    std::vector<std::string> warnings_;
};

template <std::floating_point T>
BlockJacobi<T> block_jacobi_precond(const SparseSymmetric<T>& M, const std::vector<int>& blocks,
                                    const BlockJacobiOptions& options = {})
{
    return BlockJacobi<T>(M, blocks, options);
}

} // namespace ipqp::linalg

#endif // IPQP_LINALG_BLOCK_JACOBI_HPP
