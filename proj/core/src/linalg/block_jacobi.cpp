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

#include "ipqp/linalg/block_jacobi.hpp"

#include <cmath>
#include <numeric>

#include "ipqp/errors.hpp"
#include "ipqp/linalg/dense_eigen.hpp"

namespace ipqp::linalg
{

template <std::floating_point T>
BlockJacobi<T>::BlockJacobi(const SparseSymmetric<T>& M, const std::vector<int>& blocks,
                            const BlockJacobiOptions& options)
    : dim_(M.dim())
{
    const int total = std::accumulate(blocks.begin(), blocks.end(), 0);
    if (total != dim_) {
        throw InvalidInput("block partition covers " + std::to_string(total) + " indices, matrix has " +
                           std::to_string(dim_));
    }
    int offset = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const int size = blocks[b];
        if (size < 0) {
            throw InvalidInput("negative block size in partition");
        }
        if (size == 0) {
            continue;
        }
        Block blk;
        blk.offset = offset;
        blk.size = size;
        const std::string label = "block " + std::to_string(b) + " (offset " + std::to_string(offset) + ", size " +
                                  std::to_string(size) + ")";
        if (size > options.dense_cap) {
            blk.diagonal = true;
            blk.inv_diag.resize(size);
            int replaced = 0;
            for (int i = 0; i < size; ++i) {
                const T d = std::abs(M.diagonal(offset + i));
                if (d > T(0)) {
                    blk.inv_diag[i] = T(1) / d;
                } else {
                    blk.inv_diag[i] = T(1);
                    ++replaced;
                }
            }
            if (replaced > 0) {
                warnings_.push_back("block-Jacobi: " + label + " exceeds the dense cap; " + std::to_string(replaced) +
                                    " zero diagonal entries replaced by 1");
            }
        } else {
            Eigen::MatrixXd sub = Eigen::MatrixXd::Zero(size, size);
            const auto& L = M.lower();
            for (int j = offset; j < offset + size; ++j) {
                for (typename SparseLower<T>::InnerIterator it(L, j); it; ++it) {
                    const int i = static_cast<int>(it.row());
                    if (i >= offset + size) {
                        break;
                    }
                    sub(i - offset, j - offset) = static_cast<double>(it.value());
                    sub(j - offset, i - offset) = static_cast<double>(it.value());
                }
            }
            bool singular = false;
            if (sub.isDiagonal(0.0)) {
                const Eigen::VectorXd d = sub.diagonal().cwiseAbs();
                const double dmax = d.maxCoeff();
                singular = !(dmax > 0.0) || d.minCoeff() <= options.singular_rtol * dmax;
                blk.diagonal = true;
                blk.inv_diag = singular ? VectorT<T>::Ones(size) : VectorT<T>(d.cwiseInverse().template cast<T>());
            } else {
                const SymmetricEigen eig = jacobi_eigen(sub, true, options.dense_cap);
                const Eigen::VectorXd absval = eig.values.cwiseAbs();
                const double emax = absval.maxCoeff();
                singular = !(emax > 0.0) || absval.minCoeff() <= options.singular_rtol * emax;
                if (!singular) {
                    const Eigen::MatrixXd inv =
                        eig.vectors * absval.cwiseInverse().asDiagonal() * eig.vectors.transpose();
                    blk.inverse = (0.5 * (inv + inv.transpose())).template cast<T>();
                }
            }
            if (singular) {
                if (!blk.diagonal) {
                    blk.inverse = DenseT<T>::Identity(size, size);
                }
                warnings_.push_back("block-Jacobi: " + label + " is singular; replaced by the identity");
            }
        }
        blocks_.push_back(std::move(blk));
        offset += size;
    }
}

template <std::floating_point T>
void BlockJacobi<T>::apply(const VectorT<T>& x, VectorT<T>& y) const
{
    if (x.size() != dim_) {
        throw InvalidInput("block-Jacobi: vector length mismatch");
    }
    y.resize(dim_);
    for (const auto& blk : blocks_) {
        if (blk.diagonal) {
            y.segment(blk.offset, blk.size) = blk.inv_diag.cwiseProduct(x.segment(blk.offset, blk.size));
        } else {
            y.segment(blk.offset, blk.size).noalias() = blk.inverse * x.segment(blk.offset, blk.size);
        }
    }
}

template <std::floating_point T>
LinearOperator<T> BlockJacobi<T>::as_operator() const
{
    return [this](const VectorT<T>& x, VectorT<T>& y) { apply(x, y); };
}

template <std::floating_point T>
DenseT<T> BlockJacobi<T>::to_dense() const
{
    DenseT<T> out = DenseT<T>::Zero(dim_, dim_);
    for (const auto& blk : blocks_) {
        if (blk.diagonal) {
            out.block(blk.offset, blk.offset, blk.size, blk.size) = blk.inv_diag.asDiagonal();
        } else {
            out.block(blk.offset, blk.offset, blk.size, blk.size) = blk.inverse;
        }
    }
    return out;
}

template class BlockJacobi<float>;
template class BlockJacobi<double>;

} // namespace ipqp::linalg
