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

// Helpers shared by the explicit and implicit solvers. Not installed.

#ifndef IPQP_SRC_IPM_COMMON_HPP
#define IPQP_SRC_IPM_COMMON_HPP

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

#include "ipqp/diagnostics.hpp"
#include "ipqp/equilibration.hpp"
#include "ipqp/kkt.hpp"
#include "ipqp/qp_problem.hpp"
#include "ipqp/solver_config.hpp"

namespace ipqp::detail
{

inline constexpr double kArmijo = 1e-4;
inline constexpr double kMinStep = 1e-10;
inline constexpr double kFractionToBoundary = 0.99;
inline constexpr double kPositivityFloor = 1e-300;
inline constexpr double kMinMu = 1e-300;

/// Minimum-norm solution of Cx = d (zero when p = 0).
Vector min_norm_equality_point(const QpProblem& problem);

/// Largest alpha in (0, 1] with y + alpha dy >= (1 - tau) y, times tau, or 1.
double fraction_to_boundary(const Vector& y, const Vector& dy, double tau);

/// Working problem plus the scaling that maps back to the original one.
struct WorkingProblem
{
    QpProblem problem;
    ScalingState scaling;
};

WorkingProblem prepare(const QpProblem& problem, const SolverConfig& config);

/// mu = sigma * gap / m, floored to stay positive; 0 when m = 0.
double barrier_parameter(double sigma, double gap, int m);

class Stopwatch
{
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t elapsed_ns() const
    {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Appends `msg` to `out` unless already present.
inline void add_warning(std::vector<std::string>& out, const std::string& msg)
{
    if (std::find(out.begin(), out.end(), msg) == out.end()) {
        out.push_back(msg);
    }
}

/// Unrelaxed KKT error on the original problem: max(||r(z, 0)||_inf, gap).
double kkt_error(const QpProblem& original, const ExplicitIterate& z);

/// Fills spectrum fields of a record; disables further spectrum tracing and
/// records a warning when the matrix exceeds the cap.
void fill_spectrum(IterationRecord& rec, const KktSystem& kkt, const Vector& prev_diag, bool have_prev, int cap,
                   bool& enabled, std::vector<std::string>& warnings);

} // namespace ipqp::detail

#endif // IPQP_SRC_IPM_COMMON_HPP
