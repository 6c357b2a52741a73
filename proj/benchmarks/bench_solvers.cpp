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

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "ipqp/linalg/ldlt.hpp"
#include "ipqp/qps_io.hpp"
#include "ipqp/solve.hpp"

namespace
{

using namespace ipqp;

// Banded quasi-definite matrix [[H, B'], [B, -I]] of the given size.
linalg::SparseSymmetric<double> banded_quasi_definite(int size)
{
    const int n1 = (size + 1) / 2;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < size; ++i) {
        t.emplace_back(i, i, i < n1 ? 4.0 : -1.0);
        for (int k = 1; k <= 3 && i + k < size; ++k) {
            t.emplace_back(i + k, i, u(rng));
        }
    }
    Eigen::SparseMatrix<double> L(size, size);
    L.setFromTriplets(t.begin(), t.end());
    std::vector<int> signs(static_cast<std::size_t>(size), 1);
    std::fill(signs.begin() + n1, signs.end(), -1);
    return linalg::SparseSymmetric<double>(L, signs);
}

void BM_LdltFactor(benchmark::State& state)
{
    const auto M = banded_quasi_definite(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(linalg::ldlt_factor(M, 0.0));
    }
}
BENCHMARK(BM_LdltFactor)->Arg(100)->Arg(1000)->Arg(10000);

void BM_LdltSolve(benchmark::State& state)
{
    const auto M = banded_quasi_definite(static_cast<int>(state.range(0)));
    const auto F = linalg::ldlt_factor(M, 0.0);
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(M.dim());
    for (auto _ : state) {
        benchmark::DoNotOptimize(F.solve(b));
    }
}
BENCHMARK(BM_LdltSolve)->Arg(100)->Arg(1000)->Arg(10000);

void run_solve(benchmark::State& state, const QpProblem& qp, Method method, LinearStrategy strategy)
{
    SolverConfig cfg;
    cfg.method = method;
    cfg.linear_strategy = strategy;
    for (auto _ : state) {
        const SolveOutcome r = solve(qp, cfg);
        state.counters["iterations"] = r.trace.summary().iterations;
        state.counters["factorizations"] = r.trace.summary().factorizations;
    }
}

void BM_Synthetic(benchmark::State& state, Method method, LinearStrategy strategy)
{
    run_solve(state, builtin_problem("synthetic2d"), method, strategy);
}
BENCHMARK_CAPTURE(BM_Synthetic, explicit_direct, Method::explicit_ipm, LinearStrategy::direct);
BENCHMARK_CAPTURE(BM_Synthetic, implicit_direct, Method::implicit_ipm, LinearStrategy::direct);
BENCHMARK_CAPTURE(BM_Synthetic, implicit_inexact, Method::implicit_ipm, LinearStrategy::inexact);

void BM_Cvxqp1(benchmark::State& state, Method method, LinearStrategy strategy)
{
    run_solve(state, load_problem(std::string(IPQP_DATA_DIR) + "/maros_meszaros/CVXQP1_S.QPS"), method, strategy);
}
BENCHMARK_CAPTURE(BM_Cvxqp1, explicit_direct, Method::explicit_ipm, LinearStrategy::direct);
BENCHMARK_CAPTURE(BM_Cvxqp1, implicit_direct, Method::implicit_ipm, LinearStrategy::direct);
BENCHMARK_CAPTURE(BM_Cvxqp1, implicit_inexact, Method::implicit_ipm, LinearStrategy::inexact);
BENCHMARK_CAPTURE(BM_Cvxqp1, implicit_minres, Method::implicit_ipm, LinearStrategy::minres);

} // namespace

BENCHMARK_MAIN();
