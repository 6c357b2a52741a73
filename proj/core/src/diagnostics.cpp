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

#include "ipqp/diagnostics.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ipqp/linalg/dense_eigen.hpp"

namespace ipqp
{

using nlohmann::json;

TraceHeader make_header(const SolverConfig& config, const std::string& problem, int n, int m, int p)
{
    TraceHeader h;
    h.method = to_string(config.method);
    h.linear_strategy = to_string(config.linear_strategy);
    h.precision = to_string(config.precision);
    h.sigma = config.sigma;
    if (config.linear_strategy == LinearStrategy::inexact) {
        h.theta = config.theta_or_default();
    }
    h.tol = config.tol;
    h.problem = problem;
    h.equilibrate = config.equilibrate;
    h.trace_level = to_string(config.trace_level);
    h.block_partition = std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(p);
    h.n = n;
    h.m = m;
    h.p = p;
    return h;
}

void SolveTrace::record_iteration(IterationRecord record)
{
    if (!records_.empty() && record.iter <= records_.back().iter) {
        throw InvalidInput("trace: iteration index " + std::to_string(record.iter) + " does not exceed previous " +
                           std::to_string(records_.back().iter));
    }
    if (!(record.gap >= 0.0)) {
        throw InvalidInput("trace: negative or NaN duality gap at iteration " + std::to_string(record.iter));
    }
    records_.push_back(std::move(record));
}

SpectrumMetrics spectrum_metrics(const Eigen::MatrixXd& M, int cap)
{
    SpectrumMetrics out;
    out.eigenvalues = linalg::dense_symmetric_eigenvalues(M, cap);
    if (out.eigenvalues.size() == 0) {
        return out;
    }
    const Eigen::VectorXd a = out.eigenvalues.cwiseAbs();
    out.eig_max_abs = a.maxCoeff();
    const double cutoff = 1e-14 * out.eig_max_abs;
    double mn = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] < cutoff || a[i] == 0.0) {
            ++out.zero_count;
        } else {
            mn = std::min(mn, a[i]);
        }
    }
    if (std::isfinite(mn)) {
        out.eig_min_abs = mn;
        out.cond = out.eig_max_abs / mn;
    } else {
        out.eig_min_abs = 0.0;
        out.cond = std::numeric_limits<double>::infinity();
    }
    return out;
}

SpectrumMetrics spectrum_metrics(const linalg::SparseSymmetric<double>& M, int cap)
{
    if (M.dim() > cap) {
        throw InvalidInput("spectrum: dimension " + std::to_string(M.dim()) + " exceeds the dense cap of " +
                           std::to_string(cap) + "; disable spectrum tracing for this problem");
    }
    return spectrum_metrics(M.to_dense(), cap);
}

namespace
{

json header_json(const TraceHeader& h)
{
    json j;
    j["schema"] = kTraceSchema;
    j["type"] = "header";
    j["method"] = h.method;
    j["linear_strategy"] = h.linear_strategy;
    j["precision"] = h.precision;
    j["sigma"] = h.sigma;
    j["theta"] = h.theta ? json(*h.theta) : json(nullptr);
    j["tol"] = h.tol;
    j["problem"] = h.problem;
    j["equilibrate"] = h.equilibrate;
    j["trace_level"] = h.trace_level;
    j["block_partition"] = h.block_partition;
    j["n"] = h.n;
    j["m"] = h.m;
    j["p"] = h.p;
    return j;
}

json record_json(const IterationRecord& r, bool include_timing)
{
    json j;
    j["schema"] = kTraceSchema;
    j["type"] = "iteration";
    j["iter"] = r.iter;
    j["mu"] = r.mu;
    j["gap"] = r.gap;
    j["r_x"] = r.r_x;
    j["r_i"] = r.r_i;
    j["r_e"] = r.r_e;
    j["r_comp"] = r.r_comp;
    j["residual"] = r.residual;
    j["alpha"] = r.alpha;
    j["factorized"] = r.factorized;
    j["krylov_iters"] = r.krylov_iters;
    if (r.eig_min) {
        j["eig_min"] = *r.eig_min;
    }
    if (r.eig_max) {
        j["eig_max"] = *r.eig_max;
    }
    if (r.cond) {
        j["cond"] = *r.cond;
    }
    if (r.zero_eigs) {
        j["zero_eigs"] = *r.zero_eigs;
    }
    if (r.matrix_delta) {
        j["matrix_delta"] = *r.matrix_delta;
    }
    if (r.db_minus) {
        j["db_minus"] = *r.db_minus;
    }
    if (!r.warnings.empty()) {
        j["warnings"] = r.warnings;
    }
    if (include_timing) {
        j["wall_time_ns"] = r.wall_time_ns;
    }
    return j;
}

json summary_json(const TraceSummary& s)
{
    json j;
    j["schema"] = kTraceSchema;
    j["type"] = "summary";
    j["status"] = to_string(s.status);
    j["iterations"] = s.iterations;
    j["factorizations"] = s.factorizations;
    j["krylov_total"] = s.krylov_total;
    j["residual"] = s.residual;
    j["gap"] = s.gap;
    j["objective"] = s.objective;
    j["ordering_computations"] = s.ordering_computations;
    j["warnings"] = s.warnings;
    return j;
}

template <typename T>
std::optional<T> opt(const json& j, const char* key)
{
    if (j.contains(key) && !j.at(key).is_null()) {
        return j.at(key).get<T>();
    }
    return std::nullopt;
}

double num_or_inf(const json& j, const char* key)
{
    const json& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return f;
}

} // namespace

void write_trace_jsonl(const SolveTrace& trace, std::ostream& out, bool include_timing)
{
    out << header_json(trace.header()).dump() << '\n';
    for (const auto& r : trace.records()) {
        out << record_json(r, include_timing).dump() << '\n';
    }
    out << summary_json(trace.summary()).dump() << '\n';
}

void write_trace_jsonl(const SolveTrace& trace, const std::string& path)
{
    std::ofstream f = open_out(path);
    write_trace_jsonl(trace, f);
    if (!f) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

SolveTrace read_trace_jsonl(std::istream& in)
{
    SolveTrace trace;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid trace JSON: ") + e.what(), lineno);
        }
        try {
            if (j.value("schema", "") != kTraceSchema) {
                throw ParseError("unsupported trace schema", lineno);
            }
            const std::string type = j.at("type").get<std::string>();
            if (type == "header") {
                TraceHeader h;
                h.method = j.at("method").get<std::string>();
                h.linear_strategy = j.at("linear_strategy").get<std::string>();
                h.precision = j.at("precision").get<std::string>();
                h.sigma = j.at("sigma").get<double>();
                h.theta = opt<double>(j, "theta");
                h.tol = j.at("tol").get<double>();
                h.problem = j.at("problem").get<std::string>();
                h.equilibrate = j.at("equilibrate").get<bool>();
                h.trace_level = j.at("trace_level").get<std::string>();
                h.block_partition = j.at("block_partition").get<std::string>();
                h.n = j.at("n").get<int>();
                h.m = j.at("m").get<int>();
                h.p = j.at("p").get<int>();
                trace = SolveTrace(std::move(h));
                have_header = true;
            } else if (type == "iteration") {
                if (!have_header) {
                    throw ParseError("iteration record before header", lineno);
                }
                IterationRecord r;
                r.iter = j.at("iter").get<int>();
                r.mu = j.at("mu").get<double>();
                r.gap = j.at("gap").get<double>();
                r.r_x = j.at("r_x").get<double>();
                r.r_i = j.at("r_i").get<double>();
                r.r_e = j.at("r_e").get<double>();
                r.r_comp = j.at("r_comp").get<double>();
                r.residual = j.at("residual").get<double>();
                r.alpha = j.at("alpha").get<double>();
                r.factorized = j.at("factorized").get<bool>();
                r.krylov_iters = j.at("krylov_iters").get<int>();
                r.eig_min = opt<double>(j, "eig_min");
                r.eig_max = opt<double>(j, "eig_max");
                if (j.contains("cond")) {
                    r.cond = num_or_inf(j, "cond");
                }
                r.zero_eigs = opt<int>(j, "zero_eigs");
                r.matrix_delta = opt<double>(j, "matrix_delta");
                r.db_minus = opt<std::vector<double>>(j, "db_minus");
                if (j.contains("warnings")) {
                    r.warnings = j.at("warnings").get<std::vector<std::string>>();
                }
                r.wall_time_ns = j.value("wall_time_ns", std::int64_t{0});
                trace.record_iteration(std::move(r));
            } else if (type == "summary") {
                TraceSummary& s = trace.summary();
                s.status = parse_status(j.at("status").get<std::string>());
                s.iterations = j.at("iterations").get<int>();
                s.factorizations = j.at("factorizations").get<int>();
                s.krylov_total = j.at("krylov_total").get<long long>();
                s.residual = num_or_inf(j, "residual");
                s.gap = num_or_inf(j, "gap");
                s.objective = num_or_inf(j, "objective");
                s.ordering_computations = j.at("ordering_computations").get<int>();
                s.warnings = j.at("warnings").get<std::vector<std::string>>();
            } else {
                throw ParseError("unknown record type '" + type + "'", lineno);
            }
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed trace record: ") + e.what(), lineno);
        }
    }
    if (!have_header) {
        throw ParseError("trace has no header", lineno);
    }
    return trace;
}

const std::vector<std::string> kTraceCsvColumns = {
    "iter",   "mu",         "gap",          "r_x",     "r_i",     "r_e",  "r_comp",       "residual",
    "alpha",  "factorized", "krylov_iters", "eig_min", "eig_max", "cond", "matrix_delta", "wall_time_ns",
};

void write_trace_csv(const SolveTrace& trace, std::ostream& out, bool include_timing)
{
    for (std::size_t i = 0; i < kTraceCsvColumns.size(); ++i) {
        out << (i ? "," : "") << kTraceCsvColumns[i];
    }
    out << '\n';
    std::ostringstream row;
    row << std::setprecision(17);
    auto field = [](std::ostream& os, const std::optional<double>& v) {
        if (v) {
            os << *v;
        }
    };
    for (const auto& r : trace.records()) {
        row.str("");
        row << r.iter << ',' << r.mu << ',' << r.gap << ',' << r.r_x << ',' << r.r_i << ',' << r.r_e << ','
            << r.r_comp << ',' << r.residual << ',' << r.alpha << ',' << (r.factorized ? 1 : 0) << ','
            << r.krylov_iters << ',';
        field(row, r.eig_min);
        row << ',';
        field(row, r.eig_max);
        row << ',';
        field(row, r.cond);
        row << ',';
        field(row, r.matrix_delta);
        row << ',';
        if (include_timing) {
            row << r.wall_time_ns;
        }
        out << row.str() << '\n';
    }
}

void write_trace_csv(const SolveTrace& trace, const std::string& path)
{
    std::ofstream f = open_out(path);
    write_trace_csv(trace, f);
    if (!f) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

} // namespace ipqp
