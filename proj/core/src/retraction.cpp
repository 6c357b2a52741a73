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

#include "ipqp/retraction.hpp"

namespace ipqp
{

namespace
{

template <typename Fn>
auto at_index(Eigen::Index i, Fn&& fn)
{
    try {
        return fn();
    } catch (const InvalidInput& e) {
        throw InvalidInput("entry " + std::to_string(i) + ": " + e.what());
    } catch (const OverflowError& e) {
        throw OverflowError("entry " + std::to_string(i) + ": " + e.what());
    }
}

} // namespace

RetractionEval evaluate_retraction(const Vector& v, double mu)
{
    if (!(mu > 0.0)) {
        throw InvalidInput("retraction requires mu > 0, got " + std::to_string(mu));
    }
    const Eigen::Index m = v.size();
    RetractionEval out;
    out.mu = mu;
    out.b_plus.resize(m);
    out.b_minus.resize(m);
    out.db_plus.resize(m);
    out.db_minus.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        at_index(i, [&] {
            out.b_plus[i] = softplus(v[i], mu);
            out.b_minus[i] = softplus(-v[i], mu);
            out.db_plus[i] = softplus_derivative(v[i], mu);
            out.db_minus[i] = softplus_derivative(-v[i], mu);
            return 0;
        });
    }
    return out;
}

Vector retraction_derivative_minus(const Vector& v, double mu)
{
    Vector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[i] = at_index(i, [&] { return softplus_derivative(-v[i], mu); });
    }
    return out;
}

} // namespace ipqp
