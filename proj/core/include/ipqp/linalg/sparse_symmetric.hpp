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

#ifndef IPQP_LINALG_SPARSE_SYMMETRIC_HPP
#define IPQP_LINALG_SPARSE_SYMMETRIC_HPP

#include <concepts>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ipqp/errors.hpp"

namespace ipqp::linalg
{

template <std::floating_point T>
using SparseLower = Eigen::SparseMatrix<T, Eigen::ColMajor, int>;

template <std::floating_point T>
using VectorT = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <std::floating_point T>
using DenseT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

/**
 * Symmetric matrix stored as its lower triangle in compressed-column form.
 *
 * Every diagonal entry is present structurally (explicit zeros are kept), so
 * diagonal updates never change the sparsity pattern. Each index carries a
 * block sign, +1 for primal rows and -1 for dual rows, consumed by the signed
 * static regularization of the factorization.
 */
template <std::floating_point T>
class SparseSymmetric
{
public:
    SparseSymmetric() = default;

    /// `lower` may contain upper-triangle entries; they are dropped.
    SparseSymmetric(const SparseLower<T>& lower, std::vector<int> signs) : signs_(std::move(signs))
    {
        if (lower.rows() != lower.cols()) {
            throw InvalidInput("symmetric matrix must be square, got " + std::to_string(lower.rows()) + "x" +
                               std::to_string(lower.cols()));
        }
        const int n = static_cast<int>(lower.rows());
        if (static_cast<int>(signs_.size()) != n) {
            throw InvalidInput("block sign vector has length " + std::to_string(signs_.size()) + ", expected " +
                               std::to_string(n));
        }
        std::vector<Eigen::Triplet<T, int>> trip;
        trip.reserve(static_cast<std::size_t>(lower.nonZeros()) + static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            trip.emplace_back(j, j, T(0));
            for (typename SparseLower<T>::InnerIterator it(lower, j); it; ++it) {
                if (it.row() >= j) {
                    trip.emplace_back(static_cast<int>(it.row()), j, it.value());
                }
            }
        }
        lower_.resize(n, n);
        lower_.setFromTriplets(trip.begin(), trip.end());
        lower_.makeCompressed();
        diag_pos_.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            // Sorted row indices: the diagonal is the first entry of column j.
            const int pos = lower_.outerIndexPtr()[j];
            diag_pos_[static_cast<std::size_t>(j)] = pos;
        }
    }

    static SparseSymmetric from_full(const SparseLower<T>& full, std::vector<int> signs)
    {
        return SparseSymmetric(full, std::move(signs));
    }

    int dim() const { return static_cast<int>(lower_.rows()); }
    const SparseLower<T>& lower() const { return lower_; }
    const std::vector<int>& signs() const { return signs_; }

    T diagonal(int i) const { return lower_.valuePtr()[diag_pos_[static_cast<std::size_t>(i)]]; }
    void set_diagonal(int i, T value) { lower_.valuePtr()[diag_pos_[static_cast<std::size_t>(i)]] = value; }

    VectorT<T> multiply(const VectorT<T>& x) const
    {
        if (x.size() != dim()) {
            throw InvalidInput("matrix-vector product: vector length " + std::to_string(x.size()) + ", expected " +
                               std::to_string(dim()));
        }
        VectorT<T> y = VectorT<T>::Zero(dim());
        multiply_add(x, y);
        return y;
    }

    // y += M x
    void multiply_add(const VectorT<T>& x, VectorT<T>& y) const
    {
        const int* outer = lower_.outerIndexPtr();
        const int* inner = lower_.innerIndexPtr();
        const T* val = lower_.valuePtr();
        for (int j = 0; j < dim(); ++j) {
            T acc = T(0);
            const T xj = x[j];
            for (int k = outer[j]; k < outer[j + 1]; ++k) {
                const int i = inner[k];
                if (i == j) {
                    acc += val[k] * xj;
                } else {
                    y[i] += val[k] * xj;
                    acc += val[k] * x[i];
                }
            }
            y[j] += acc;
        }
    }

    DenseT<T> to_dense() const
    {
        DenseT<T> out = DenseT<T>::Zero(dim(), dim());
        for (int j = 0; j < dim(); ++j) {
            for (typename SparseLower<T>::InnerIterator it(lower_, j); it; ++it) {
                out(it.row(), j) = it.value();
                out(j, it.row()) = it.value();
            }
        }
        return out;
    }

    /// Maximum absolute row sum of the full symmetric matrix.
    T inf_norm() const { return row_norms().maxCoeff(); }

    /// Infinity norm restricted to the rows with block sign `sign`.
    T inf_norm_of_sign(int sign) const
    {
        const VectorT<T> rows = row_norms();
        T out = T(0);
        for (int i = 0; i < dim(); ++i) {
            if ((signs_[static_cast<std::size_t>(i)] < 0) == (sign < 0)) {
                out = std::max(out, rows[i]);
            }
        }
        return out;
    }

    /// Absolute row sums of the full symmetric matrix.
    VectorT<T> row_norms() const
    {
        VectorT<T> rows = VectorT<T>::Zero(dim());
        for (int j = 0; j < dim(); ++j) {
            for (typename SparseLower<T>::InnerIterator it(lower_, j); it; ++it) {
                rows[it.row()] += std::abs(it.value());
                if (it.row() != j) {
                    rows[j] += std::abs(it.value());
                }
            }
        }
        if (dim() == 0) {
            return VectorT<T>::Zero(1);
        }
        return rows;
    }

    T max_abs_diagonal() const
    {
        T out = T(0);
        for (int i = 0; i < dim(); ++i) {
            out = std::max(out, std::abs(diagonal(i)));
        }
        return out;
    }

    template <std::floating_point U>
    SparseSymmetric<U> cast() const
    {
        return SparseSymmetric<U>(lower_.template cast<U>(), signs_);
    }

private:
    SparseLower<T> lower_;
    std::vector<int> signs_;
    std::vector<int> diag_pos_;
};

} // namespace ipqp::linalg

#endif // IPQP_LINALG_SPARSE_SYMMETRIC_HPP
