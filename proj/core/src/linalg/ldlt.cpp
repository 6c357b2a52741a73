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

#include "ipqp/linalg/ldlt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "ipqp/linalg/ordering.hpp"

namespace ipqp::linalg
{

namespace
{

template <typename T>
using Column = std::vector<std::pair<int, T>>;

template <typename T>
T lookup(const Column<T>& col, int i)
{
    auto it = std::lower_bound(col.begin(), col.end(), i, [](const auto& e, int idx) { return e.first < idx; });
    return (it != col.end() && it->first == i) ? it->second : T(0);
}

// Largest |a_ij| over i != j in column j, with its row.
template <typename T>
std::pair<T, int> off_diagonal_max(const Column<T>& col, int j)
{
    T best = T(0);
    int arg = -1;
    for (const auto& [i, a] : col) {
        if (i != j && std::abs(a) > best) {
            best = std::abs(a);
            arg = i;
        }
    }
    return {best, arg};
}

// col <- col + delta restricted to the rows in delta, dropping rows d1, d2.
template <typename T>
void merge_update(Column<T>& col, const Column<T>& delta, int d1, int d2)
{
    Column<T> out;
    out.reserve(col.size() + delta.size());
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < col.size() || b < delta.size()) {
        int i;
        T v;
        if (b == delta.size() || (a < col.size() && col[a].first < delta[b].first)) {
            i = col[a].first;
            v = col[a].second;
            ++a;
        } else if (a == col.size() || delta[b].first < col[a].first) {
            i = delta[b].first;
            v = delta[b].second;
            ++b;
        } else {
            i = col[a].first;
            v = col[a].second + delta[b].second;
            ++a;
            ++b;
        }
        if (i != d1 && i != d2) {
            out.emplace_back(i, v);
        }
    }
    col.swap(out);
}

template <typename T>
void check_finite(const VectorT<T>& v, const char* what)
{
    if (!v.allFinite()) {
        throw NumericalError(std::string("LDL' solve: non-finite entry in ") + what);
    }
}

} // namespace

template <std::floating_point T>
Factorization<T> ldlt_factor(const SparseSymmetric<T>& M, T static_reg, const std::vector<int>& order,
                             const LdltOptions& options)
{
    const int n = M.dim();
    if (static_cast<int>(order.size()) != n) {
        throw InvalidInput("ordering has length " + std::to_string(order.size()) + ", expected " + std::to_string(n));
    }
    if (!(static_reg >= T(0))) {
        throw InvalidInput("static regularization must be non-negative");
    }
    const auto& L = M.lower();
    for (int k = 0; k < L.nonZeros(); ++k) {
        if (!std::isfinite(L.valuePtr()[k])) {
            throw NumericalError("LDL' factor: matrix has a non-finite entry");
        }
    }

    Factorization<T> F;
    F.matrix_ = M;
    F.static_reg_ = static_reg;
    F.options_ = options;

    std::vector<Column<T>> cols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (typename SparseLower<T>::InnerIterator it(L, j); it; ++it) {
            const int i = static_cast<int>(it.row());
            cols[static_cast<std::size_t>(j)].emplace_back(i, it.value());
            if (i != j) {
                cols[static_cast<std::size_t>(i)].emplace_back(j, it.value());
            }
        }
    }
    for (auto& c : cols) {
        std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    const T alpha = (T(1) + std::sqrt(T(17))) / T(8);
    const auto& signs = M.signs();
    // Tiny is judged against the primal rows. The dual diagonal of an
    // explicit matrix spans many orders of magnitude and its small entries
    // are genuine pivots.
    const T tiny = static_cast<T>(options.pivot_tol) * std::max(T(1), M.inf_norm_of_sign(+1));
    std::vector<char> done(static_cast<std::size_t>(n), 0);

    auto pivot_1x1 = [&](int k) {
        auto& ck = cols[static_cast<std::size_t>(k)];
        PivotBlock<T> blk;
        blk.k = k;
        T d = lookup(ck, k);
        if (std::abs(d) <= tiny) {
            if (static_reg == T(0)) {
                Inertia partial = F.inertia_;
                partial.zero += n - partial.total();
                throw SingularMatrix("LDL' factor: zero pivot at index " + std::to_string(k) +
                                         " and no static regularization",
                                     partial);
            }
            d = (signs[static_cast<std::size_t>(k)] < 0 ? -static_reg : static_reg);
            blk.regularized = true;
            ++F.regularized_pivots_;
        }
        blk.d11 = d;
        if (d > T(0)) {
            ++F.inertia_.positive;
        } else {
            ++F.inertia_.negative;
        }
        for (const auto& [i, a] : ck) {
            if (i != k) {
                blk.lk.emplace_back(i, a / d);
            }
        }
        for (const auto& [j, ljk] : blk.lk) {
            const T ajk = ljk * d;
            Column<T> delta;
            delta.reserve(blk.lk.size());
            for (const auto& [i, lik] : blk.lk) {
                delta.emplace_back(i, -lik * ajk);
            }
            merge_update(cols[static_cast<std::size_t>(j)], delta, k, -1);
        }
        ck.clear();
        ck.shrink_to_fit();
        done[static_cast<std::size_t>(k)] = 1;
        F.blocks_.push_back(std::move(blk));
    };

    auto pivot_2x2 = [&](int k, int r) {
        auto& ck = cols[static_cast<std::size_t>(k)];
        auto& cr = cols[static_cast<std::size_t>(r)];
        const T a = lookup(ck, k);
        const T b = lookup(ck, r);
        const T c = lookup(cr, r);
        const T det = a * c - b * b;
        if (det == T(0) || !std::isfinite(det)) {
            Inertia partial = F.inertia_;
            partial.zero += n - partial.total();
            throw SingularMatrix("LDL' factor: singular 2x2 pivot at (" + std::to_string(k) + ", " +
                                     std::to_string(r) + ")",
                                 partial);
        }
        PivotBlock<T> blk;
        blk.k = k;
        blk.r = r;
        blk.d11 = a;
        blk.d21 = b;
        blk.d22 = c;
        if (det < T(0)) {
            ++F.inertia_.positive;
            ++F.inertia_.negative;
        } else if (a + c > T(0)) {
            F.inertia_.positive += 2;
        } else {
            F.inertia_.negative += 2;
        }
        ++F.two_by_two_;

        // Union of the two columns, rows k and r removed.
        std::vector<std::tuple<int, T, T>> rows;
        {
            std::size_t p = 0;
            std::size_t q = 0;
            while (p < ck.size() || q < cr.size()) {
                int i;
                T aik = T(0);
                T air = T(0);
                if (q == cr.size() || (p < ck.size() && ck[p].first < cr[q].first)) {
                    i = ck[p].first;
                    aik = ck[p].second;
                    ++p;
                } else if (p == ck.size() || cr[q].first < ck[p].first) {
                    i = cr[q].first;
                    air = cr[q].second;
                    ++q;
                } else {
                    i = ck[p].first;
                    aik = ck[p].second;
                    air = cr[q].second;
                    ++p;
                    ++q;
                }
                if (i != k && i != r) {
                    rows.emplace_back(i, aik, air);
                }
            }
        }
        for (const auto& [i, aik, air] : rows) {
            blk.lk.emplace_back(i, (aik * c - air * b) / det);
            blk.lr.emplace_back(i, (air * a - aik * b) / det);
        }
        for (std::size_t jj = 0; jj < rows.size(); ++jj) {
            const auto& [j, ajk, ajr] = rows[jj];
            Column<T> delta;
            delta.reserve(rows.size());
            for (std::size_t ii = 0; ii < rows.size(); ++ii) {
                delta.emplace_back(std::get<0>(rows[ii]), -(blk.lk[ii].second * ajk + blk.lr[ii].second * ajr));
            }
            merge_update(cols[static_cast<std::size_t>(j)], delta, k, r);
        }
        ck.clear();
        ck.shrink_to_fit();
        cr.clear();
        cr.shrink_to_fit();
        done[static_cast<std::size_t>(k)] = 1;
        done[static_cast<std::size_t>(r)] = 1;
        F.blocks_.push_back(std::move(blk));
    };

    for (int pos = 0; pos < n; ++pos) {
        const int k = order[static_cast<std::size_t>(pos)];
        if (k < 0 || k >= n) {
            throw InvalidInput("ordering entry out of range: " + std::to_string(k));
        }
        if (done[static_cast<std::size_t>(k)]) {
            continue;
        }
        const auto& ck = cols[static_cast<std::size_t>(k)];
        const T akk = std::abs(lookup(ck, k));
        const auto [w1, r] = off_diagonal_max(ck, k);
        if (w1 == T(0) || akk >= alpha * w1) {
            pivot_1x1(k);
            continue;
        }
        const auto& cr = cols[static_cast<std::size_t>(r)];
        const T wr = off_diagonal_max(cr, r).first;
        if (akk * wr >= alpha * w1 * w1) {
            pivot_1x1(k);
        } else if (std::abs(lookup(cr, r)) >= alpha * wr) {
            pivot_1x1(r);
            --pos; // k is still pending
        } else {
            pivot_2x2(k, r);
        }
    }
    return F;
}

template <std::floating_point T>
Factorization<T> ldlt_factor(const SparseSymmetric<T>& M, T static_reg, const LdltOptions& options)
{
    return ldlt_factor(M, static_reg, amd_order(pattern_of(M)), options);
}

template <std::floating_point T>
std::vector<int> Factorization<T>::permutation() const
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(dim()));
    for (const auto& blk : blocks_) {
        out.push_back(blk.k);
        if (blk.r >= 0) {
            out.push_back(blk.r);
        }
    }
    return out;
}

template <std::floating_point T>
std::size_t Factorization<T>::factor_nonzeros() const
{
    std::size_t nnz = 0;
    for (const auto& blk : blocks_) {
        nnz += blk.lk.size() + blk.lr.size();
    }
    return nnz;
}

template <std::floating_point T>
VectorT<T> Factorization<T>::solve_raw(const VectorT<T>& rhs) const
{
    if (rhs.size() != dim()) {
        throw InvalidInput("LDL' solve: rhs has length " + std::to_string(rhs.size()) + ", expected " +
                           std::to_string(dim()));
    }
    VectorT<T> y = rhs;
    for (const auto& blk : blocks_) {
        const T yk = y[blk.k];
        for (const auto& [i, l] : blk.lk) {
            y[i] -= l * yk;
        }
        if (blk.r >= 0) {
            const T yr = y[blk.r];
            for (const auto& [i, l] : blk.lr) {
                y[i] -= l * yr;
            }
        }
    }
    for (const auto& blk : blocks_) {
        if (blk.r < 0) {
            y[blk.k] /= blk.d11;
        } else {
            const T det = blk.d11 * blk.d22 - blk.d21 * blk.d21;
            const T yk = y[blk.k];
            const T yr = y[blk.r];
            y[blk.k] = (blk.d22 * yk - blk.d21 * yr) / det;
            y[blk.r] = (blk.d11 * yr - blk.d21 * yk) / det;
        }
    }
    for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
        T acc = T(0);
        for (const auto& [i, l] : it->lk) {
            acc += l * y[i];
        }
        if (it->r >= 0) {
            T acc_r = T(0);
            for (const auto& [i, l] : it->lr) {
                acc_r += l * y[i];
            }
            y[it->r] -= acc_r;
        }
        y[it->k] -= acc;
    }
    return y;
}

template <std::floating_point T>
VectorT<T> Factorization<T>::solve(const VectorT<T>& rhs, LdltSolveInfo* info) const
{
    check_finite(rhs, "right-hand side");
    VectorT<T> x = solve_raw(rhs);
    check_finite(x, "solution");
    const T rhs_norm = rhs.size() == 0 ? T(0) : rhs.template lpNorm<Eigen::Infinity>();
    auto rel_residual = [&](const VectorT<T>& r) -> double {
        if (r.size() == 0) {
            return 0.0;
        }
        const double rn = static_cast<double>(r.template lpNorm<Eigen::Infinity>());
        return rhs_norm > T(0) ? rn / static_cast<double>(rhs_norm) : rn;
    };
    VectorT<T> r = rhs - matrix_.multiply(x);
    double rel = rel_residual(r);
    const double threshold = 64.0 * static_cast<double>(std::numeric_limits<T>::epsilon());
    int steps = 0;
    while (rel > threshold && steps < options_.refinement_steps) {
        VectorT<T> candidate = x + solve_raw(r);
        VectorT<T> r_new = rhs - matrix_.multiply(candidate);
        const double rel_new = rel_residual(r_new);
        ++steps;
        if (!(rel_new < rel)) {
            break;
        }
        x = std::move(candidate);
        r = std::move(r_new);
        rel = rel_new;
    }
    if (info != nullptr) {
        info->relative_residual = rel;
        info->refinement_steps = steps;
    }
    return x;
}

template <std::floating_point T>
DenseT<T> Factorization<T>::reconstruct() const
{
    const int n = dim();
    DenseT<T> Lm = DenseT<T>::Identity(n, n);
    DenseT<T> D = DenseT<T>::Zero(n, n);
    for (const auto& blk : blocks_) {
        for (const auto& [i, l] : blk.lk) {
            Lm(i, blk.k) = l;
        }
        D(blk.k, blk.k) = blk.d11;
        if (blk.r >= 0) {
            for (const auto& [i, l] : blk.lr) {
                Lm(i, blk.r) = l;
            }
            D(blk.r, blk.r) = blk.d22;
            D(blk.k, blk.r) = blk.d21;
            D(blk.r, blk.k) = blk.d21;
        }
    }
    return Lm * D * Lm.transpose();
}

template class Factorization<float>;
template class Factorization<double>;
template Factorization<float> ldlt_factor(const SparseSymmetric<float>&, float, const std::vector<int>&,
                                          const LdltOptions&);
template Factorization<double> ldlt_factor(const SparseSymmetric<double>&, double, const std::vector<int>&,
                                           const LdltOptions&);
template Factorization<float> ldlt_factor(const SparseSymmetric<float>&, float, const LdltOptions&);
template Factorization<double> ldlt_factor(const SparseSymmetric<double>&, double, const LdltOptions&);

} // namespace ipqp::linalg
