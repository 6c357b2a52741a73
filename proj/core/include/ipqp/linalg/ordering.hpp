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

#ifndef IPQP_LINALG_ORDERING_HPP
#define IPQP_LINALG_ORDERING_HPP

#include <vector>

#include "ipqp/linalg/sparse_symmetric.hpp"

namespace ipqp::linalg
{

/// Sparsity pattern of a lower-triangular CSC matrix.
struct Pattern
{
    int dim = 0;
    std::vector<int> outer;
    std::vector<int> inner;

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

template <std::floating_point T>
Pattern pattern_of(const SparseSymmetric<T>& M)
{
    const auto& L = M.lower();
    Pattern p;
    p.dim = M.dim();
    p.outer.assign(L.outerIndexPtr(), L.outerIndexPtr() + L.outerSize() + 1);
    p.inner.assign(L.innerIndexPtr(), L.innerIndexPtr() + L.nonZeros());
    return p;
}

/// Approximate minimum degree elimination order: entry k is the original
/// index eliminated at step k.
std::vector<int> amd_order(const Pattern& pattern);

/// Holds the ordering of the last pattern seen; recomputes only when the
/// pattern changes.
class OrderingCache
{
public:
    const std::vector<int>& order(const Pattern& pattern);
    int computations() const { return computations_; }

private:
    Pattern pattern_;
    std::vector<int> order_;
    bool valid_ = false;
    int computations_ = 0;
};

} // namespace ipqp::linalg

#endif // IPQP_LINALG_ORDERING_HPP
