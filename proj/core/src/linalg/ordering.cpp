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

#include "ipqp/linalg/ordering.hpp"

#include <Eigen/OrderingMethods>

namespace ipqp::linalg
{

std::vector<int> amd_order(const Pattern& pattern)
{
    const int n = pattern.dim;
    if (n == 0) {
        return {};
    }
    std::vector<Eigen::Triplet<double, int>> trip;
    trip.reserve(pattern.inner.size() * 2);
    for (int j = 0; j < n; ++j) {
        for (int k = pattern.outer[static_cast<std::size_t>(j)]; k < pattern.outer[static_cast<std::size_t>(j) + 1];
             ++k) {
            const int i = pattern.inner[static_cast<std::size_t>(k)];
            trip.emplace_back(i, j, 1.0);
            if (i != j) {
                trip.emplace_back(j, i, 1.0);
            }
        }
    }
    Eigen::SparseMatrix<double, Eigen::ColMajor, int> full(n, n);
    full.setFromTriplets(trip.begin(), trip.end());

    // Eigen's AMD returns the inverse permutation used by its Cholesky
    // solvers; its index array lists original indices in elimination order.
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
    Eigen::AMDOrdering<int> amd;
    amd(full, perm);
    return {perm.indices().data(), perm.indices().data() + perm.indices().size()};
}

const std::vector<int>& OrderingCache::order(const Pattern& pattern)
{
    if (!valid_ || !(pattern == pattern_)) {
        order_ = amd_order(pattern);
        pattern_ = pattern;
        valid_ = true;
        ++computations_;
    }
    return order_;
}

} // namespace ipqp::linalg
