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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "ipqp/ipqp.hpp"

namespace ipqp::cli
{

namespace
{

namespace fs = std::filesystem;

struct CommonFlags
{
    std::string problem;
    std::string linsolve = "direct";
    std::string precision = "f64";
    double sigma = 0.1;
    std::optional<double> theta;
    double tol = 1e-9;
    int max_iters = 200;
    std::string equilibrate = "on";
    std::string trace;
    std::string trace_level;
    std::string out;
    bool verify = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_problem)
{
    if (with_problem) {
        cmd->add_option("--problem", f.problem, "QPS/MPS file, qp_v1 JSON file or builtin:<name>")->required();
    }
    cmd->add_option("--linsolve", f.linsolve, "direct | inexact | minres")->capture_default_str();
    cmd->add_option("--precision", f.precision, "f64 | f32 (linear solves only)")->capture_default_str();
    cmd->add_option("--sigma", f.sigma, "centering parameter in (0, 1]")->capture_default_str();
    cmd->add_option("--tol", f.tol, "termination tolerance")->capture_default_str();
    cmd->add_option("--max-iters", f.max_iters, "iteration limit")->capture_default_str();
    cmd->add_option("--equilibrate", f.equilibrate, "on | off")->capture_default_str();
    cmd->add_option("--trace-level", f.trace_level, "basic | spectrum (env IPQP_TRACE_LEVEL)");
    cmd->add_flag("--verify", f.verify, "recheck every Newton step against the unreduced system");
}

bool parse_switch(const std::string& s)
{
    if (s == "on" || s == "true" || s == "1") {
        return true;
    }
    if (s == "off" || s == "false" || s == "0") {
        return false;
    }
    throw InvalidInput("--equilibrate expects on or off, got '" + s + "'");
}

SolverConfig make_config(const CommonFlags& f)
{
    SolverConfig c;
    c.linear_strategy = parse_linear_strategy(f.linsolve);
    c.precision = parse_precision(f.precision);
    c.sigma = f.sigma;
    c.theta = f.theta;
    c.tol = f.tol;
    c.max_iters = f.max_iters;
    c.equilibrate = parse_switch(f.equilibrate);
    c.verify_steps = f.verify;
    std::string level = f.trace_level;
    if (level.empty()) {
        if (const char* env = std::getenv("IPQP_TRACE_LEVEL")) {
            level = env;
        }
    }
    c.trace_level = level.empty() ? TraceLevel::basic : parse_trace_level(level);
    if (c.theta && c.linear_strategy != LinearStrategy::inexact) {
        throw InvalidInput("--theta requires --linsolve inexact");
    }
    return c;
}

void write_trace(const SolveTrace& trace, const std::string& path)
{
    if (fs::path(path).extension() == ".csv") {
        write_trace_csv(trace, path);
    } else {
        write_trace_jsonl(trace, path);
    }
}

int exit_code(SolveStatus s)
{
    return s == SolveStatus::converged ? kExitConverged : kExitNotConverged;
}

// Ratio of the largest to the smallest per-iteration max |eig|.
std::optional<double> eig_max_ratio(const SolveTrace& t)
{
    double lo = INFINITY;
    double hi = 0.0;
    for (const IterationRecord& r : t.records()) {
        if (r.eig_max) {
            lo = std::min(lo, *r.eig_max);
            hi = std::max(hi, *r.eig_max);
        }
    }
    if (hi == 0.0 || !(lo > 0.0)) {
        return std::nullopt;
    }
    return hi / lo;
}

std::optional<double> final_cond(const SolveTrace& t)
{
    for (auto it = t.records().rbegin(); it != t.records().rend(); ++it) {
        if (it->cond) {
            return it->cond;
        }
    }
    return std::nullopt;
}

std::string opt(const std::optional<double>& v)
{
    return v ? fmt::format("{:.3e}", *v) : std::string("-");
}

void print_summary_header(std::ostream& out)
{
    fmt::print(out, "{:<10} {:<10} {:>6} {:>8} {:>8} {:>11} {:>11} {:>11} {:>11}\n", "method", "status", "iters",
               "factors", "krylov", "residual", "gap", "eig_ratio", "final_cond");
}

void print_summary_row(std::ostream& out, const std::string& method, const SolveTrace& t)
{
    const TraceSummary& s = t.summary();
    fmt::print(out, "{:<10} {:<10} {:>6} {:>8} {:>8} {:>11.3e} {:>11.3e} {:>11} {:>11}\n", method,
               to_string(s.status), s.iterations, s.factorizations, s.krylov_total, s.residual, s.gap,
               opt(eig_max_ratio(t)), opt(final_cond(t)));
}

void print_warnings(std::ostream& err, const SolveTrace& t)
{
    for (const std::string& w : t.summary().warnings) {
        err << "warning: " << w << '\n';
    }
}

int cmd_solve(const CommonFlags& f, const std::string& method, std::ostream& out, std::ostream& err)
{
    SolverConfig config = make_config(f);
    config.method = parse_method(method);
    config.validate();
    const QpProblem problem = load_problem(f.problem);
    const SolveOutcome r = solve(problem, config);
    print_warnings(err, r.trace);
    fmt::print(out, "problem {} (n={}, m={}, p={})\n", problem.name(), problem.n(), problem.m(), problem.p());
    print_summary_header(out);
    print_summary_row(out, method, r.trace);
    fmt::print(out, "objective {:.12g}\n", r.solution.objective);
    if (!f.trace.empty()) {
        write_trace(r.trace, f.trace);
    }
    if (!f.out.empty()) {
        write_solution(r.solution, f.out);
    }
    return exit_code(r.trace.summary().status);
}

std::string with_suffix(const std::string& path, const std::string& tag)
{
    fs::path p(path);
    const std::string ext = p.has_extension() ? p.extension().string() : std::string(".jsonl");
    return (p.parent_path() / (p.stem().string() + "." + tag + ext)).string();
}

int cmd_compare(const CommonFlags& f, std::ostream& out, std::ostream& err)
{
    SolverConfig implicit_cfg = make_config(f);
    implicit_cfg.method = Method::implicit_ipm;
    implicit_cfg.validate();
    SolverConfig explicit_cfg = implicit_cfg;
    explicit_cfg.method = Method::explicit_ipm;
    if (explicit_cfg.linear_strategy == LinearStrategy::inexact) {
        // Factorization reuse is defined for the implicit matrix only.
        err << "note: explicit run uses --linsolve direct\n";
        explicit_cfg.linear_strategy = LinearStrategy::direct;
        explicit_cfg.theta.reset();
    }
    explicit_cfg.validate();
    const QpProblem problem = load_problem(f.problem);
    const SolveOutcome e = solve(problem, explicit_cfg);
    const SolveOutcome i = solve(problem, implicit_cfg);
    print_warnings(err, e.trace);
    print_warnings(err, i.trace);

    const std::string base = f.trace.empty() ? std::string("compare.jsonl") : f.trace;
    write_trace(e.trace, with_suffix(base, "explicit"));
    write_trace(i.trace, with_suffix(base, "implicit"));
    if (!f.out.empty()) {
        write_solution(e.solution, with_suffix(f.out, "explicit"));
        write_solution(i.solution, with_suffix(f.out, "implicit"));
    }

    fmt::print(out, "problem {} (n={}, m={}, p={})\n", problem.name(), problem.n(), problem.m(), problem.p());
    print_summary_header(out);
    print_summary_row(out, "explicit", e.trace);
    print_summary_row(out, "implicit", i.trace);
    return std::max(exit_code(e.trace.summary().status), exit_code(i.trace.summary().status));
}

std::vector<std::string> expand_problems(const std::string& source)
{
    std::vector<std::string> out;
    if (!source.empty() && fs::is_directory(source)) {
        for (const auto& entry : fs::directory_iterator(source)) {
            std::string ext = entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
            if (entry.is_regular_file() && (ext == ".qps" || ext == ".mps" || ext == ".json")) {
                out.push_back(entry.path().string());
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    std::stringstream ss(source);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<double> parse_sweep(const std::string& source)
{
    std::vector<double> out;
    std::stringstream ss(source);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty()) {
            throw InvalidInput("--theta-sweep: cannot parse '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw InvalidInput("--theta-sweep is empty");
    }
    return out;
}

struct BenchRow
{
    std::string problem;
    double theta = 0.0;
    std::string status;
    int iterations = 0;
    int factorizations = 0;
    double wall_time_s = 0.0;
    double gap = 0.0;
    double residual = 0.0;
    std::string error;
};

BenchRow bench_one(const std::string& source, double theta, const SolverConfig& base)
{
    BenchRow row;
    row.problem = source;
    row.theta = theta;
    try {
        const QpProblem problem = load_problem(source);
        SolverConfig c = base;
        c.theta = theta;
        const auto t0 = std::chrono::steady_clock::now();
        const SolveOutcome r = solve(problem, c);
        row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const TraceSummary& s = r.trace.summary();
        row.status = to_string(s.status);
        row.iterations = s.iterations;
        row.factorizations = s.factorizations;
        row.gap = s.gap;
        row.residual = s.residual;
    } catch (const std::exception& e) {
        row.status = "error";
        row.error = e.what();
    }
    return row;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

int cmd_bench(const CommonFlags& f, const std::string& problems, const std::string& sweep, int jobs,
              std::ostream& out, std::ostream& err)
{
    const std::vector<std::string> list = expand_problems(problems);
    if (list.empty()) {
        err << "error: no problems given (--problems is empty or the directory has no .qps/.mps/.json files)\n";
        return kExitUsage;
    }
    const std::vector<double> thetas = parse_sweep(sweep);
    SolverConfig base = make_config(f);
    base.method = Method::implicit_ipm;
    base.linear_strategy = LinearStrategy::inexact;
    for (double t : thetas) {
        SolverConfig c = base;
        c.theta = t;
        c.validate();
    }

    std::vector<std::pair<std::string, double>> tasks;
    for (const std::string& p : list) {
        for (double t : thetas) {
            tasks.emplace_back(p, t);
        }
    }
    std::vector<BenchRow> rows(tasks.size());
    const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
    for (std::size_t start = 0; start < tasks.size(); start += workers) {
        std::vector<std::future<BenchRow>> batch;
        for (std::size_t k = start; k < std::min(tasks.size(), start + workers); ++k) {
            batch.push_back(std::async(std::launch::async, bench_one, tasks[k].first, tasks[k].second, base));
        }
        for (std::size_t k = 0; k < batch.size(); ++k) {
            rows[start + k] = batch[k].get();
        }
    }

    const std::string path = f.out.empty() ? std::string("bench.csv") : f.out;
    std::ofstream csv(path);
    if (!csv) {
        throw InvalidInput("cannot write '" + path + "'");
    }
    csv << "problem,theta,status,iterations,factorizations,wall_time_s,gap,residual,error\n";
    int failed = 0;
    for (const BenchRow& r : rows) {
        fmt::print(csv, "{},{},{},{},{},{:.6f},{:.6e},{:.6e},{}\n", csv_escape(r.problem), r.theta, r.status,
                   r.iterations, r.factorizations, r.wall_time_s, r.gap, r.residual, csv_escape(r.error));
        if (r.status != "converged") {
            ++failed;
            err << "bench: " << r.problem << " theta=" << r.theta << ": " << r.status
                << (r.error.empty() ? "" : " (" + r.error + ")") << '\n';
        }
    }
    fmt::print(out, "{} runs ({} problems x {} theta values), {} not converged; rows written to {}\n", rows.size(),
               list.size(), thetas.size(), failed, path);
    return failed == 0 ? kExitConverged : kExitNotConverged;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"ipqp: interior-point QP solver with explicit and implicit Newton systems", "ipqp"};
    app.require_subcommand(1);

    CommonFlags solve_flags;
    std::string method = "implicit";
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one problem");
    add_common(solve_cmd, solve_flags, true);
    solve_cmd->add_option("--method", method, "explicit | implicit")->capture_default_str();
    solve_cmd->add_option("--theta", solve_flags.theta, "inexact forcing term in (0, 1), default 0.5");
    solve_cmd->add_option("--trace", solve_flags.trace, "trace file (.jsonl or .csv)");
    solve_cmd->add_option("--out", solve_flags.out, "solution JSON file");

    CommonFlags compare_flags;
    CLI::App* compare_cmd = app.add_subcommand("compare", "solve with both methods and compare");
    add_common(compare_cmd, compare_flags, true);
    compare_cmd->add_option("--theta", compare_flags.theta, "inexact forcing term for the implicit run");
    compare_cmd->add_option("--trace", compare_flags.trace,
                            "trace base name; .explicit/.implicit are inserted before the extension")
        ->capture_default_str();
    compare_cmd->add_option("--out", compare_flags.out, "solution base name");

    CommonFlags bench_flags;
    std::string problems;
    std::string sweep = "0.1,0.3,0.5,0.7,0.9";
    int jobs = 1;
    CLI::App* bench_cmd = app.add_subcommand("bench", "theta sweep of the inexact implicit method");
    add_common(bench_cmd, bench_flags, false);
    bench_cmd->add_option("--problems", problems, "directory or comma-separated list of problems")->required();
    bench_cmd->add_option("--theta-sweep", sweep, "comma-separated theta values")->capture_default_str();
    bench_cmd->add_option("--jobs", jobs, "parallel workers")->capture_default_str();
    bench_cmd->add_option("--out", bench_flags.out, "CSV output file (default bench.csv)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) {
            return 0;
        }
        const CLI::App* failing = &app;
        for (const CLI::App* sub : {solve_cmd, compare_cmd, bench_cmd}) {
            if (sub->parsed()) {
                failing = sub;
            }
        }
        err << failing->help();
        return kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) {
            return cmd_solve(solve_flags, method, out, err);
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(compare_flags, out, err);
        }
        return cmd_bench(bench_flags, problems, sweep, jobs, out, err);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNotConverged;
    }
}

} // namespace ipqp::cli
