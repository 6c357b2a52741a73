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

#ifndef IPQP_RETRACTION_HPP
#define IPQP_RETRACTION_HPP

#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <type_traits>

#include "ipqp/errors.hpp"
#include "ipqp/qp_problem.hpp"

namespace ipqp
{

/*
 * Softplus retraction
 *
 *     b_mu(v) = (v + sqrt(v^2 + 4 mu)) / 2,
 *
 * the positive map with b_mu(v) b_mu(-v) = mu, b_mu(v) - b_mu(-v) = v and
 * db_mu(v) + db_mu(-v) = 1. Setting lambda = b_mu(v), s = b_mu(-v) satisfies
 * relaxed complementarity by construction.
 *
 * Evaluation notes:
 *  - sqrt(v^2 + 4 mu) is formed as hypot(v, 2 sqrt(mu)), so |v| up to the
 *    overflow threshold is fine.
 *  - For v < 0 the sum v + sqrt(...) cancels; the conjugate form
 *    2 mu / (sqrt(v^2 + 4 mu) - v) is used there instead.
 *  - The derivative is computed from whichever tail is small and complemented,
 *    then kept strictly inside (0, 1) by rounding toward the open interval.
 */

namespace detail
{

template <std::floating_point T>
void check_retraction_args(T v, T mu)
{
    if (!(mu > T(0))) {
        throw InvalidInput("retraction requires mu > 0, got " + std::to_string(static_cast<double>(mu)));
    }
    if (!std::isfinite(v)) {
        throw OverflowError("retraction argument v = " + std::to_string(static_cast<double>(v)) +
                            " is not finite");
    }
    if (!std::isfinite(mu)) {
        throw OverflowError("retraction barrier parameter is not finite");
    }
}

// sqrt(v^2 + 4 mu) without forming v^2.
template <std::floating_point T>
T retraction_root(T v, T mu)
{
    return std::hypot(v, T(2) * std::sqrt(mu));
}

// db_mu(-|v|), the small tail of the derivative, cancellation free.
template <std::floating_point T>
T small_derivative_tail(T abs_v, T mu, T root)
{
    return (T(2) * mu / (root + abs_v)) / root;
}

} // namespace detail

template <std::floating_point T>
T softplus(T v, T mu)
{
    detail::check_retraction_args(v, mu);
    if constexpr (std::is_same_v<T, float>) {
        // One rounding instead of four keeps binary32 results faithful.
        return static_cast<float>(softplus<double>(v, mu));
    }
    const T root = detail::retraction_root(v, mu);
    if (v >= T(0)) {
        return T(0.5) * v + T(0.5) * root;
    }
    return T(2) * mu / (root - v);
}

template <std::floating_point T>
T softplus_derivative(T v, T mu)
{
    detail::check_retraction_args(v, mu);
    T value;
    if constexpr (std::is_same_v<T, float>) {
        value = static_cast<float>(softplus_derivative<double>(v, mu));
    } else {
        const T root = detail::retraction_root(v, mu);
        const T tail = detail::small_derivative_tail(std::abs(v), mu, root);
        value = v >= T(0) ? T(1) - tail : tail;
    }
    // The exact value lies in (0, 1); keep the rounded one there too.
    value = std::max(value, std::numeric_limits<T>::denorm_min());
    value = std::min(value, std::nextafter(T(1), T(0)));
    return value;
}

/// sqrt(mu) exp(v): the exponential retraction, kept only as a comparison
/// oracle for diagnostics and property tests. Satisfies the product identity
/// but not the derivative-sum or derivative-bound properties.
template <std::floating_point T>
T exponential_map(T v, T mu)
{
    detail::check_retraction_args(v, mu);
    const T value = std::sqrt(mu) * std::exp(v);
    if (!std::isfinite(value)) {
        throw OverflowError("exponential map overflows at v = " + std::to_string(static_cast<double>(v)));
    }
    return value;
}

/// Vectorized softplus evaluation at +v and -v.
struct RetractionEval
{
    Vector b_plus;   // b_mu(v)
    Vector b_minus;  // b_mu(-v)
    Vector db_plus;  // db_mu(v)
    Vector db_minus; // db_mu(-v)
    double mu = 0.0;
};

RetractionEval evaluate_retraction(const Vector& v, double mu);

/// db_mu(-v) element-wise; the mutable diagonal of the implicit matrix.
Vector retraction_derivative_minus(const Vector& v, double mu);

} // namespace ipqp

#endif // IPQP_RETRACTION_HPP
