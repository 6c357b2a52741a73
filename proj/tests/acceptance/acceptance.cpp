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

// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any fails. All tolerances are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ipqp/linalg/block_jacobi.hpp"
#include "ipqp/linalg/dense_eigen.hpp"
#include "ipqp/linalg/ldlt.hpp"
#include "ipqp/linalg/minres.hpp"
#include "ipqp/qps_io.hpp"
#include "ipqp/retraction.hpp"
#include "ipqp/solve.hpp"

namespace
{

using namespace ipqp;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string data_path(const std::string& file)
{
    return std::string(IPQP_DATA_DIR) + "/maros_meszaros/" + file;
}

// Collects failure notes for one criterion.
struct Check
{
    bool ok = true;
    std::string notes;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            if (!notes.empty()) {
                notes += "; ";
            }
            notes += what;
        }
    }
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

SolverConfig config_for(Method method, LinearStrategy strategy = LinearStrategy::direct)
{
    SolverConfig c;
    c.method = method;
    c.linear_strategy = strategy;
    return c;
}

const char* method_name(Method m)
{
    return m == Method::explicit_ipm ? "explicit" : "implicit";
}

// 1. Both solvers on synthetic2d.
Check criterion_1()
{
    Check c;
    const QpProblem qp = builtin_problem("synthetic2d");
    const Vector x_star = (Vector(2) << 0.325, 0.325).finished();
    const Vector lambda_star = (Vector(4) << 0.325, 0.0, 0.0, 0.0).finished();
    for (Method m : {Method::explicit_ipm, Method::implicit_ipm}) {
        SolverConfig cfg = config_for(m);
        cfg.tol = 1e-9;
        const auto t0 = std::chrono::steady_clock::now();
        const SolveOutcome r = solve(qp, cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string name = method_name(m);
        c.expect(r.trace.summary().status == SolveStatus::converged, name + " not converged");
        c.expect((r.solution.x - x_star).cwiseAbs().maxCoeff() <= 1e-6, name + " x off");
        c.expect((r.solution.lambda - lambda_star).cwiseAbs().maxCoeff() <= 1e-5, name + " lambda off");
        c.expect(r.trace.summary().iterations <= 50, name + " iterations " + std::to_string(r.trace.summary().iterations));
        c.expect(secs < 1.0, name + " took " + num(secs) + " s");
    }
    return c;
}

std::vector<double> v_grid()
{
    std::vector<double> out;
    for (int k = 0; k < 50; ++k) {
        const double mag = std::pow(10.0, -3.0 + 9.0 * k / 49.0);
        out.push_back(mag);
        out.push_back(-mag);
    }
    return out;
}

std::vector<double> mu_grid()
{
    std::vector<double> out;
    for (int k = 0; k < 100; ++k) {
        out.push_back(std::pow(10.0, -12.0 + 14.0 * k / 99.0));
    }
    return out;
}

template <typename T>
int retraction_identity_failures(double rel, double sum_abs)
{
    int bad = 0;
    for (double vd : v_grid()) {
        for (double mud : mu_grid()) {
            const T v = static_cast<T>(vd);
            const T mu = static_cast<T>(mud);
            const double bp = softplus(v, mu);
            const double bm = softplus(T(-v), mu);
            const double dp = softplus_derivative(v, mu);
            const double dm = softplus_derivative(T(-v), mu);
            const bool ok = bp > 0.0 && bm > 0.0 && std::abs(bp * bm - double(mu)) <= rel * double(mu) &&
                            std::abs(dp + dm - 1.0) <= sum_abs && dp > 0.0 && dp < 1.0 && dm > 0.0 && dm < 1.0 &&
                            std::abs((bp - bm) - double(v)) <= rel * std::abs(double(v));
            bad += ok ? 0 : 1;
        }
    }
    return bad;
}

// 2. Retraction identities, barrier-update bounds and exponential-map scaling.
Check criterion_2()
{
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const int bad64 = retraction_identity_failures<double>(1e-10, 1e-12);
    const int bad32 = retraction_identity_failures<float>(1e-4, 1e-4);
    c.expect(bad64 == 0, std::to_string(bad64) + " binary64 grid failures");
    c.expect(bad32 == 0, std::to_string(bad32) + " binary32 grid failures");

    constexpr double eps = std::numeric_limits<double>::epsilon();
    int bound_bad = 0;
    for (double sigma : {0.1, 0.5, 0.9}) {
        for (double vd : v_grid()) {
            const double a = std::abs(vd);
            const double sign = vd > 0 ? 1.0 : -1.0;
            for (double mu : mu_grid()) {
                const double mu_plus = sigma * mu;
                const double small = softplus(-sign * vd, mu_plus);
                const double big = softplus(sign * vd, mu);
                const double diff = big - softplus(sign * vd, mu_plus);
                const bool ok = small > 0.0 && small <= mu_plus / a * (1.0 + 4 * eps) && diff >= 0.0 &&
                                diff <= (1.0 - sigma) * mu / a * (1.0 + 4 * eps) + 2 * eps * big;
                bound_bad += ok ? 0 : 1;
            }
        }
    }
    c.expect(bound_bad == 0, std::to_string(bound_bad) + " bound failures");

    double worst = 0.0;
    for (double sigma : {0.1, 0.25, 0.5, 0.9}) {
        for (int k = -50; k <= 50; ++k) {
            for (double mu : {1e-10, 1e-4, 1.0, 10.0}) {
                const double ratio = exponential_map(0.4 * k, sigma * mu) / exponential_map(0.4 * k, mu);
                worst = std::max(worst, std::abs(ratio - std::sqrt(sigma)));
            }
        }
    }
    c.expect(worst <= 1e-14, "exponential map rescaling error " + num(worst));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 5.0, "took " + num(secs) + " s");
    return c;
}

// 3. Spectrum of the two Newton matrices along the synthetic2d path.
Check criterion_3()
{
    Check c;
    const QpProblem qp = builtin_problem("synthetic2d");
    for (Method m : {Method::explicit_ipm, Method::implicit_ipm}) {
        SolverConfig cfg = config_for(m);
        cfg.tol = 1e-9;
        cfg.trace_level = TraceLevel::spectrum;
        const SolveOutcome r = solve(qp, cfg);
        const auto& recs = r.trace.records();
        const std::string name = method_name(m);
        c.expect(r.trace.summary().gap <= 1e-9, name + " gap " + num(r.trace.summary().gap));
        if (recs.empty()) {
            c.expect(false, name + " empty trace");
            continue;
        }
        if (m == Method::implicit_ipm) {
            double lo = kInf, hi = 0.0, delta_max = 0.0, delta_tail = 0.0;
            for (std::size_t k = 0; k < recs.size(); ++k) {
                if (recs[k].eig_max) {
                    lo = std::min(lo, *recs[k].eig_max);
                    hi = std::max(hi, *recs[k].eig_max);
                }
                const double d = recs[k].matrix_delta.value_or(0.0);
                delta_max = std::max(delta_max, d);
                if (k + 5 >= recs.size()) {
                    delta_tail = std::max(delta_tail, d);
                }
            }
            c.expect(hi > 0.0 && hi <= 10.0 * lo, "implicit max|eig| ratio " + num(hi / lo));
            c.expect(delta_max > 0.0 && delta_tail <= 1e-2 * delta_max,
                     "implicit matrix delta tail " + num(delta_tail) + " of max " + num(delta_max));
        } else {
            const double cond = recs.back().cond.value_or(0.0);
            c.expect(cond > 1e8, "explicit final cond " + num(cond));
        }
    }
    return c;
}

SolveOutcome solve_inexact(const QpProblem& qp, double theta)
{
    SolverConfig cfg = config_for(Method::implicit_ipm, LinearStrategy::inexact);
    cfg.theta = theta;
    return solve(qp, cfg);
}

// 4. Factorization reuse.
Check criterion_4()
{
    Check c;
    const QpProblem qp = builtin_problem("synthetic2d");
    const SolveOutcome exact = solve(qp, config_for(Method::implicit_ipm));
    const SolveOutcome half = solve_inexact(qp, 0.5);
    c.expect(half.trace.summary().status == SolveStatus::converged, "theta=0.5 not converged");
    c.expect(half.trace.summary().residual <= std::max(exact.trace.summary().residual, exact.trace.header().tol),
             "theta=0.5 residual " + num(half.trace.summary().residual));
    c.expect(half.trace.summary().factorizations <= 8,
             "theta=0.5 factorizations " + std::to_string(half.trace.summary().factorizations));

    int inversions = 0;
    int previous = std::numeric_limits<int>::max();
    for (double theta : {1e-12, 0.1, 0.3, 0.5, 0.7, 0.9}) {
        const SolveOutcome r = solve_inexact(qp, theta);
        c.expect(r.trace.summary().status == SolveStatus::converged, "sweep theta=" + num(theta) + " not converged");
        inversions += r.trace.summary().factorizations > previous ? 1 : 0;
        previous = r.trace.summary().factorizations;
    }
    c.expect(inversions <= 1, std::to_string(inversions) + " sweep inversions");

    for (const char* file : {"HS21.QPS", "HS35.QPS", "HS76.QPS"}) {
        const QpProblem mm = load_problem(data_path(file));
        const SolveOutcome tight = solve_inexact(mm, 1e-12);
        const SolveOutcome loose = solve_inexact(mm, 0.5);
        const int ft = tight.trace.summary().factorizations;
        const int fl = loose.trace.summary().factorizations;
        c.expect(tight.trace.summary().status == SolveStatus::converged &&
                     loose.trace.summary().status == SolveStatus::converged,
                 std::string(file) + " not converged");
        c.expect(fl <= 0.7 * ft, std::string(file) + " factorizations " + std::to_string(fl) + " vs " +
                                     std::to_string(ft));
    }
    return c;
}

double median(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 5. Block-Jacobi preconditioned MINRES in both formulations.
Check criterion_5()
{
    Check c;
    std::vector<std::pair<std::string, QpProblem>> problems;
    problems.emplace_back("synthetic2d", builtin_problem("synthetic2d"));
    for (const char* file : {"HS21.QPS", "HS35.QPS", "HS76.QPS"}) {
        problems.emplace_back(file, load_problem(data_path(file)));
    }
    double best_growth = 0.0;
    for (const auto& [name, qp] : problems) {
        long long totals[2] = {0, 0};
        for (Method m : {Method::explicit_ipm, Method::implicit_ipm}) {
            SolverConfig cfg = config_for(m, LinearStrategy::minres);
            cfg.minres_rtol = 1e-10;
            cfg.minres_atol = 1e-10;
            const SolveOutcome r = solve(qp, cfg);
            const std::string tag = name + " " + method_name(m);
            c.expect(r.trace.summary().gap <= 1e-8, tag + " gap " + num(r.trace.summary().gap));
            std::vector<int> counts;
            for (const IterationRecord& rec : r.trace.records()) {
                counts.push_back(rec.krylov_iters);
            }
            totals[m == Method::implicit_ipm] = r.trace.summary().krylov_total;
            if (counts.empty()) {
                c.expect(false, tag + " empty trace");
                continue;
            }
            if (m == Method::implicit_ipm) {
                const double med = median(counts);
                const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
                c.expect(*hi <= 3.0 * med && *lo >= med / 3.0, tag + " Krylov counts outside 3x of median");
            } else {
                int tail = 0;
                for (std::size_t k = counts.size() >= 3 ? counts.size() - 3 : 0; k < counts.size(); ++k) {
                    tail = std::max(tail, counts[k]);
                }
                best_growth = std::max(best_growth, double(tail) / std::max(1, counts.front()));
            }
        }
        c.expect(totals[1] < totals[0], name + " implicit Krylov total " + std::to_string(totals[1]) +
                                            " not below explicit " + std::to_string(totals[0]));
    }
    c.expect(best_growth >= 3.0, "largest explicit Krylov growth " + num(best_growth) + "x");
    return c;
}

// 6. Single-precision linear solves.
Check criterion_6()
{
    Check c;
    std::vector<std::pair<std::string, QpProblem>> problems;
    problems.emplace_back("synthetic2d", builtin_problem("synthetic2d"));
    problems.emplace_back("CVXQP1_S", load_problem(data_path("CVXQP1_S.QPS")));
    for (const auto& [name, qp] : problems) {
        for (Method m : {Method::explicit_ipm, Method::implicit_ipm}) {
            const std::string tag = name + " " + method_name(m);
            SolverConfig f32 = config_for(m);
            f32.precision = Precision::f32;
            f32.tol = 1e-16;
            f32.max_iters = 100;
            const double r32 = solve(qp, f32).trace.summary().residual;
            if (m == Method::implicit_ipm) {
                c.expect(r32 <= 1e-10, tag + " f32 residual " + num(r32));
            } else {
                c.expect(r32 >= 1e-6, tag + " f32 residual " + num(r32));
            }
            SolverConfig f64 = config_for(m);
            f64.tol = 1e-12;
            const double r64 = solve(qp, f64).trace.summary().residual;
            c.expect(r64 <= 1e-12, tag + " f64 residual " + num(r64));
        }
    }
    return c;
}

struct Listed
{
    const char* file;
    int M, N, NZ, QN, QNZ;
};

std::pair<double, double> row_window(const QpsFile& f, int i)
{
    const double r = f.rhs[static_cast<std::size_t>(i)];
    const char t = f.row_types[static_cast<std::size_t>(i)];
    const auto& R = f.ranges[static_cast<std::size_t>(i)];
    if (!R) {
        if (t == 'G') return {r, kInf};
        if (t == 'L') return {-kInf, r};
        return {r, r};
    }
    if (t == 'G') return {r, r + std::abs(*R)};
    if (t == 'L') return {r - std::abs(*R), r};
    return *R >= 0 ? std::make_pair(r, r + *R) : std::make_pair(r + *R, r);
}

bool raw_member(const QpsFile& f, const Vector& x, double tol)
{
    for (int j = 0; j < f.num_cols(); ++j) {
        if (x[j] < f.lower[static_cast<std::size_t>(j)] - tol || x[j] > f.upper[static_cast<std::size_t>(j)] + tol) {
            return false;
        }
    }
    Vector ax = Vector::Zero(f.num_rows());
    for (const QpsEntry& e : f.coefficients) {
        ax[e.row] += e.value * x[e.col];
    }
    for (int i = 0; i < f.num_rows(); ++i) {
        const auto [lo, hi] = row_window(f, i);
        if (ax[i] < lo - tol || ax[i] > hi + tol) {
            return false;
        }
    }
    return true;
}

bool converted_member(const QpProblem& qp, const Vector& x, double tol)
{
    const Vector ri = qp.A() * x - qp.b();
    const Vector re = qp.C() * x - qp.d();
    return (ri.size() == 0 || ri.minCoeff() >= -tol) && (re.size() == 0 || re.cwiseAbs().maxCoeff() <= tol);
}

// 7. QPS ingestion against the published size listing.
Check criterion_7()
{
    Check c;
    const Listed listing[] = {
        {"HS21.QPS", 1, 2, 2, 2, 0},         {"HS35.QPS", 1, 3, 3, 3, 2},       {"HS51.QPS", 3, 5, 7, 5, 2},
        {"HS52.QPS", 3, 5, 7, 5, 2},         {"HS53.QPS", 3, 5, 7, 5, 2},       {"HS76.QPS", 3, 4, 10, 4, 2},
        {"HS118.QPS", 17, 15, 39, 15, 0},    {"HS268.QPS", 5, 5, 25, 5, 10},    {"GENHS28.QPS", 8, 10, 24, 10, 9},
        {"TAME.QPS", 1, 2, 2, 2, 1},         {"CVXQP1_S.QPS", 50, 100, 148, 100, 286},
        {"CVXQP2_S.QPS", 25, 100, 74, 100, 286}, {"CVXQP3_S.QPS", 75, 100, 222, 100, 286},
    };
    int passed = 0;
    for (const Listed& s : listing) {
        const std::string file = s.file;
        try {
            const QpsFile f = read_qps_file(data_path(file));
            const QpProblem qp = to_qp_problem(f);
            bool ok = f.num_rows() == s.M && f.num_cols() == s.N && f.constraint_nonzeros() == s.NZ &&
                      f.quadratic_columns() == s.QN && f.quadratic_offdiag_lower() == s.QNZ && qp.n() == s.N;
            c.expect(ok, file + " dimensions differ from listing");

            const Eigen::MatrixXd C(qp.C());
            const auto cod = C.completeOrthogonalDecomposition();
            std::mt19937 rng(1234);
            int disagreements = 0;
            for (int k = 0; k < 1000; ++k) {
                Vector x(qp.n());
                for (int j = 0; j < qp.n(); ++j) {
                    const double fl = f.lower[static_cast<std::size_t>(j)];
                    const double fu = f.upper[static_cast<std::size_t>(j)];
                    const double lo = std::isfinite(fl) ? fl : std::min(fu, 0.0) - 20.0;
                    const double hi = std::isfinite(fu) ? fu : std::max(fl, 0.0) + 20.0;
                    x[j] = std::uniform_real_distribution<double>(lo - 1.0, hi + 1.0)(rng);
                }
                if (qp.p() > 0 && k % 2 == 0) {
                    x -= cod.solve(C * x - qp.d());
                }
                disagreements += raw_member(f, x, 1e-9) != converted_member(qp, x, 1e-9) ? 1 : 0;
            }
            c.expect(disagreements == 0, file + " " + std::to_string(disagreements) + " membership disagreements");
            ok = ok && disagreements == 0;
            passed += ok ? 1 : 0;
        } catch (const std::exception& e) {
            c.expect(false, file + ": " + e.what());
        }
    }
    c.expect(passed >= 5, std::to_string(passed) + " instances pass");
    return c;
}

using Sym = linalg::SparseSymmetric<double>;

struct QuasiDefinite
{
    Sym matrix;
    int n1 = 0;
    int n2 = 0;
};

QuasiDefinite random_quasi_definite(std::mt19937& rng, int size)
{
    const int n1 = (size + 1) / 2;
    const int n2 = size - n1;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::bernoulli_distribution keep(0.3);
    auto sparse_random = [&](int r, int cols) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(r, cols);
        for (int j = 0; j < cols; ++j) {
            for (int i = 0; i < r; ++i) {
                if (keep(rng)) {
                    M(i, j) = u(rng);
                }
            }
        }
        return M;
    };
    const Eigen::MatrixXd R1 = sparse_random(n1, n1);
    const Eigen::MatrixXd R2 = sparse_random(n2, n2);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(size, size);
    M.topLeftCorner(n1, n1) = R1.transpose() * R1 + Eigen::MatrixXd::Identity(n1, n1);
    M.bottomRightCorner(n2, n2) = -(R2.transpose() * R2 + Eigen::MatrixXd::Identity(n2, n2));
    const Eigen::MatrixXd B = sparse_random(n2, n1);
    M.bottomLeftCorner(n2, n1) = B;
    M.topRightCorner(n1, n2) = B.transpose();
    std::vector<int> signs(static_cast<std::size_t>(size), 1);
    std::fill(signs.begin() + n1, signs.end(), -1);
    return {Sym(Eigen::MatrixXd(M.triangularView<Eigen::Lower>()).sparseView(0.0, 0.0), signs), n1, n2};
}

// 8. LDL', MINRES and the dense eigensolver.
Check criterion_8()
{
    Check c;
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int size : {5, 50, 200}) {
        for (int trial = 0; trial < 3; ++trial) {
            const QuasiDefinite q = random_quasi_definite(rng, size);
            const Eigen::VectorXd x_true = Eigen::VectorXd::NullaryExpr(size, [&] { return u(rng); });
            const Eigen::VectorXd b = q.matrix.multiply(x_true);
            const Eigen::VectorXd x = linalg::ldlt_factor(q.matrix, 0.0).solve(b);
            const double rel = (q.matrix.multiply(x) - b).lpNorm<Eigen::Infinity>() / b.lpNorm<Eigen::Infinity>();
            c.expect(rel <= 1e-9, "LDL' size " + std::to_string(size) + " residual " + num(rel));

            const linalg::BlockJacobi<double> P(q.matrix, {q.n1, q.n2});
            linalg::MinresOptions opts;
            opts.rtol = 1e-13;
            opts.atol = 0.0;
            const auto r = linalg::minres(linalg::as_operator(q.matrix), b, P.as_operator(), opts);
            const double diff = (r.x - x).lpNorm<Eigen::Infinity>() / x.lpNorm<Eigen::Infinity>();
            c.expect(diff <= 1e-8, "MINRES size " + std::to_string(size) + " differs by " + num(diff));

            if (size <= 50) {
                const Eigen::MatrixXd S = q.matrix.to_dense();
                const Eigen::VectorXd eig = linalg::dense_symmetric_eigenvalues(S);
                const double scale = S.cwiseAbs().maxCoeff() * size;
                c.expect(std::abs(eig.sum() - S.trace()) <= 1e-9 * scale, "eigenvalue trace size " +
                                                                            std::to_string(size));
                // Compare log|det| and sign against an independent LU.
                const Eigen::PartialPivLU<Eigen::MatrixXd> lu(S);
                const Eigen::VectorXd ud = lu.matrixLU().diagonal();
                const double log_lu = ud.array().abs().log().sum();
                const double log_eig = eig.array().abs().log().sum();
                const bool neg_lu = lu.determinant() < 0.0;
                const bool neg_eig = (eig.array() < 0.0).count() % 2 == 1;
                c.expect(std::abs(log_lu - log_eig) <= 1e-9 * std::max(1.0, std::abs(log_lu)) && neg_lu == neg_eig,
                         "eigenvalue determinant size " + std::to_string(size));
            }
        }
    }
    return c;
}

} // namespace

int main()
{
    const std::vector<std::pair<int, std::function<Check()>>> criteria = {
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
        {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
    };
    int failed = 0;
    for (const auto& [id, run] : criteria) {
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::printf("criterion %d: %s%s%s\n", id, c.ok ? "PASS" : "FAIL", c.notes.empty() ? "" : " (",
                    c.notes.empty() ? "" : (c.notes + ")").c_str());
        std::fflush(stdout);
        failed += c.ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
