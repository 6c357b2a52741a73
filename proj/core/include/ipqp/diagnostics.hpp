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

#ifndef IPQP_DIAGNOSTICS_HPP
#define IPQP_DIAGNOSTICS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ipqp/errors.hpp"
#include "ipqp/linalg/sparse_symmetric.hpp"
#include "ipqp/solver_config.hpp"

namespace ipqp
{

inline constexpr const char* kTraceSchema = "trace_v1";

struct TraceHeader
{
    std::string method;
    std::string linear_strategy;
    std::string precision;
    double sigma = 0.0;
    std::optional<double> theta;
    double tol = 0.0;
    std::string problem;
    bool equilibrate = false;
    std::string trace_level;
    // Block partition used by the block-Jacobi preconditioner, "n,m,p".
    std::string block_partition;
    int n = 0;
    int m = 0;
    int p = 0;
};

TraceHeader make_header(const SolverConfig& config, const std::string& problem, int n, int m, int p);

/**
 * One interior-point iteration. Residual blocks are infinity norms of the
 * relaxed residual at the iteration's mu on the working (possibly scaled)
 * problem; `residual` is the unrelaxed KKT residual on the original problem.
 * Spectrum fields are filled only at trace level "spectrum".
 */
struct IterationRecord
{
    int iter = 0;
    double mu = 0.0;
    double gap = 0.0;
    double r_x = 0.0;
    double r_i = 0.0;
    double r_e = 0.0;
    double r_comp = 0.0;
    double residual = 0.0;
    double alpha = 0.0;
    bool factorized = false;
    int krylov_iters = 0;
    std::optional<double> eig_min;
    std::optional<double> eig_max;
    std::optional<double> cond;
    std::optional<int> zero_eigs;
    // ||M_k - M_{k-1}||_inf over the iterate-dependent diagonal.
    std::optional<double> matrix_delta;
    std::optional<std::vector<double>> db_minus;
    std::vector<std::string> warnings;
    std::int64_t wall_time_ns = 0;
};

struct TraceSummary
{
    SolveStatus status = SolveStatus::max_iters;
    int iterations = 0;
    int factorizations = 0;
    long long krylov_total = 0;
    double residual = 0.0;
    double gap = 0.0;
    double objective = 0.0;
    int ordering_computations = 0;
    std::vector<std::string> warnings;
};

/// Append-only per-iteration log of one solve.
class SolveTrace
{
public:
    SolveTrace() = default;
    explicit SolveTrace(TraceHeader header) : header_(std::move(header)) {}

    const TraceHeader& header() const { return header_; }
    const std::vector<IterationRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    /// Throws InvalidInput unless record.iter exceeds the last recorded iter
    /// and gap >= 0.
    void record_iteration(IterationRecord record);

    const TraceSummary& summary() const { return summary_; }
    TraceSummary& summary() { return summary_; }

private:
    TraceHeader header_;
    std::vector<IterationRecord> records_;
    TraceSummary summary_;
};

inline SolveTrace& record_iteration(SolveTrace& trace, IterationRecord record)
{
    trace.record_iteration(std::move(record));
    return trace;
}

struct SpectrumMetrics
{
    double eig_min_abs = 0.0; // smallest nonzero |eigenvalue|
    double eig_max_abs = 0.0;
    double cond = 0.0;        // eig_max_abs / eig_min_abs
    int zero_count = 0;       // |eig| < 1e-14 max|eig|, excluded above
    Eigen::VectorXd eigenvalues;
};

SpectrumMetrics spectrum_metrics(const Eigen::MatrixXd& M, int cap = 500);
SpectrumMetrics spectrum_metrics(const linalg::SparseSymmetric<double>& M, int cap = 500);

/// Line-delimited JSON: a header object, one object per iteration, then a
/// summary object. Every line carries "schema": "trace_v1".
void write_trace_jsonl(const SolveTrace& trace, std::ostream& out, bool include_timing = true);
void write_trace_jsonl(const SolveTrace& trace, const std::string& path);
SolveTrace read_trace_jsonl(std::istream& in);

/// Fixed column order; see kTraceCsvColumns.
void write_trace_csv(const SolveTrace& trace, std::ostream& out, bool include_timing = true);
void write_trace_csv(const SolveTrace& trace, const std::string& path);
extern const std::vector<std::string> kTraceCsvColumns;

} // namespace ipqp

#endif // IPQP_DIAGNOSTICS_HPP
