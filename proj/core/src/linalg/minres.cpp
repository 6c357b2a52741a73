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

#include "ipqp/linalg/minres.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ipqp/errors.hpp"

namespace ipqp::linalg
{

namespace
{

template <typename T>
void apply_precond(const LinearOperator<T>& precond, const VectorT<T>& x, VectorT<T>& y)
{
    if (precond) {
        y.resize(x.size());
        precond(x, y);
    } else {
        y = x;
    }
}

[[noreturn]] void fail(int iteration, const std::string& what)
{
    throw NumericalError("MINRES iteration " + std::to_string(iteration) + ": " + what);
}

} // namespace

template <std::floating_point T>
MinresResult<T> minres(const LinearOperator<T>& op, const VectorT<T>& rhs, const LinearOperator<T>& precond,
                       const MinresOptions& options)
{
    const Eigen::Index n = rhs.size();
    MinresResult<T> out;
    out.x = VectorT<T>::Zero(n);
    KrylovReport& rep = out.report;
    if (!rhs.allFinite()) {
        fail(0, "right-hand side is not finite");
    }
    const int max_iters = options.max_iters > 0 ? options.max_iters : static_cast<int>(std::max<Eigen::Index>(10 * n, 10));

    VectorT<T> r1 = rhs;
    VectorT<T> y;
    apply_precond(precond, r1, y);
    const T b1sq = r1.dot(y);
    if (b1sq < T(0) || !std::isfinite(b1sq)) {
        fail(0, "preconditioner is not positive definite");
    }
    const T beta1 = std::sqrt(b1sq);
    if (beta1 == T(0)) {
        rep.converged = true;
        return out;
    }
    const double stop = std::max(options.rtol * static_cast<double>(beta1), options.atol);

    VectorT<T> r2 = r1;
    VectorT<T> v(n);
    VectorT<T> w = VectorT<T>::Zero(n);
    VectorT<T> w1(n);
    VectorT<T> w2 = VectorT<T>::Zero(n);
    VectorT<T> Av(n);
    T oldb = T(0);
    T beta = beta1;
    T dbar = T(0);
    T epsln = T(0);
    T phibar = beta1;
    T cs = T(-1);
    T sn = T(0);
    const T eps = std::numeric_limits<T>::epsilon();

    for (int itn = 1; itn <= max_iters; ++itn) {
        v = y / beta;
        op(v, Av);
        y = Av;
        if (itn >= 2) {
            y -= (beta / oldb) * r1;
        }
        const T alfa = v.dot(y);
        y -= (alfa / beta) * r2;
        r1.swap(r2);
        r2 = y;
        apply_precond(precond, r2, y);
        oldb = beta;
        const T bsq = r2.dot(y);
        if (!std::isfinite(bsq) || !std::isfinite(alfa)) {
            fail(itn, "non-finite value in Lanczos recurrence");
        }
        if (bsq < T(0)) {
            fail(itn, "preconditioner is not positive definite");
        }
        beta = std::sqrt(bsq);

        const T oldeps = epsln;
        const T delta = cs * dbar + sn * alfa;
        const T gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        T gamma = std::hypot(gbar, beta);
        gamma = std::max(gamma, eps);
        cs = gbar / gamma;
        sn = beta / gamma;
        const T phi = cs * phibar;
        phibar = sn * phibar;

        w1.swap(w2);
        w2.swap(w);
        w = (v - oldeps * w1 - delta * w2) / gamma;
        out.x += phi * w;
        if (!std::isfinite(phibar) || !out.x.allFinite()) {
            fail(itn, "non-finite iterate");
        }

        rep.iterations = itn;
        rep.residual_history.push_back(static_cast<double>(phibar));
        rep.relative_residual = static_cast<double>(phibar) / static_cast<double>(beta1);
        if (static_cast<double>(phibar) <= stop || beta == T(0)) {
            rep.converged = true;
            break;
        }
    }
    return out;
}

template MinresResult<float> minres(const LinearOperator<float>&, const VectorT<float>&, const LinearOperator<float>&,
                                    const MinresOptions&);
template MinresResult<double> minres(const LinearOperator<double>&, const VectorT<double>&,
                                     const LinearOperator<double>&, const MinresOptions&);

} // namespace ipqp::linalg
