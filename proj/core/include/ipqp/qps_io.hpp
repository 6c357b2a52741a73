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

#ifndef IPQP_QPS_IO_HPP
#define IPQP_QPS_IO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ipqp/qp_problem.hpp"
#include "ipqp/solver_config.hpp"

namespace ipqp
{

struct QpsEntry
{
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/**
 * Section model of a QPS file. Constraint rows exclude the objective row
 * (the first N row); further N rows are free rows and are dropped. Duplicate
 * coefficients are summed. The quadratic term is stored as a full symmetric
 * triplet list: QUADOBJ entries are mirrored, QMATRIX entries taken as given.
 */
struct QpsFile
{
    std::string name;
    bool maximize = false;
    std::string objective_row;

    std::vector<std::string> row_names;
    std::vector<char> row_types; // 'L', 'G', 'E'
    std::vector<std::string> col_names;

    std::vector<QpsEntry> coefficients; // constraint matrix, summed duplicates
    std::vector<double> objective;      // linear objective, length n
    std::vector<double> rhs;            // per row, default 0
    double objective_rhs = 0.0;         // objective constant is -objective_rhs
    std::vector<std::optional<double>> ranges;
    std::vector<double> lower; // default 0
    std::vector<double> upper; // default +inf
    std::vector<QpsEntry> quadratic; // full symmetric (row, col) pairs
    std::vector<std::string> warnings;

    int num_rows() const { return static_cast<int>(row_names.size()); }
    int num_cols() const { return static_cast<int>(col_names.size()); }
    /// Nonzeros of the constraint matrix.
    int constraint_nonzeros() const;
    /// Columns with a nonzero quadratic entry.
    int quadratic_columns() const;
    /// Strictly lower-triangular nonzeros of the quadratic term.
    int quadratic_offdiag_lower() const;
    /// f(x) as defined by the file (minimization sense applied).
    double objective_value(const std::vector<double>& x) const;
    /// Membership in the feasible set as defined by the file.
    bool feasible(const std::vector<double>& x, double tol) const;
};

/// Free-form QPS/MPS. Throws ParseError carrying the line number.
QpsFile parse_qps(std::string_view text);
QpsFile read_qps_file(const std::string& path);

/**
 * Converts to min 1/2 x'Qx + q'x s.t. Ax >= b, Cx = d:
 * G rows and lower bounds become rows of A; L rows and upper bounds are
 * negated; ranged rows become two inequality rows; E rows and fixed
 * variables become rows of C. Maximization problems are negated.
 */
QpProblem to_qp_problem(const QpsFile& file);

/// Names accepted by builtin_problem.
std::vector<std::string> builtin_names();

/// "synthetic2d": Q = I, q = 0, A = [[1,1],[0,1],[-1,0],[0,-1]],
/// b = (0.65, -0.1, -0.85, -0.8). "equality3d": Q = diag(1,2,3),
/// q = (-1,0,1), x1 + x2 + x3 = 1.
QpProblem builtin_problem(std::string_view name);

/// "builtin:<name>", a .qps/.mps file, or a qp_v1 .json file.
QpProblem load_problem(const std::string& source);

/// Problem JSON, schema "qp_v1": dims, triplet lists and dense vectors.
std::string problem_to_json(const QpProblem& problem);
QpProblem problem_from_json(std::string_view text);
void write_problem_json(const QpProblem& problem, const std::string& path);
QpProblem read_problem_json(const std::string& path);

struct SolutionRecord
{
    std::string problem;
    std::string method;
    SolveStatus status = SolveStatus::max_iters;
    Vector x;
    Vector lambda;
    Vector gamma;
    Vector s;
    std::optional<Vector> v;
    double r_x = 0.0;
    double r_i = 0.0;
    double r_e = 0.0;
    double residual = 0.0; // unrelaxed KKT residual
    double gap = 0.0;
    double objective = 0.0;
    int iterations = 0;
};

SolutionRecord make_solution_record(const QpProblem& problem, const ExplicitIterate& z, SolveStatus status,
                                    const std::string& method, int iterations);
SolutionRecord make_solution_record(const QpProblem& problem, const ImplicitIterate& z, SolveStatus status,
                                    const std::string& method, int iterations);

/// Solution JSON, schema "solution_v1"; doubles round-trip bit-exactly.
std::string solution_to_json(const SolutionRecord& sol);
SolutionRecord solution_from_json(std::string_view text);
void write_solution(const SolutionRecord& sol, const std::string& path);
SolutionRecord read_solution(const std::string& path);

} // namespace ipqp

#endif // IPQP_QPS_IO_HPP
