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

#include "ipqp/qps_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ipqp/errors.hpp"

namespace ipqp
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

using json = nlohmann::json;

enum class Section
{
    none,
    name,
    objsense,
    rows,
    columns,
    rhs,
    ranges,
    bounds,
    quadobj,
    qmatrix,
    end
};

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

std::string upper(std::string_view s)
{
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

double number(std::string_view tok, int line)
{
    // from_chars rejects a leading '+', which some writers emit.
    if (!tok.empty() && tok.front() == '+') {
        tok.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        const std::string t = upper(tok);
        if (t == "INF" || t == "INFINITY" || t == "1E30" || t == "1E+30") {
            return kInf;
        }
        if (t == "-INF" || t == "-INFINITY" || t == "-1E30" || t == "-1E+30") {
            return -kInf;
        }
        throw ParseError("expected a number, got '" + std::string(tok) + "'", line);
    }
    if (std::abs(value) >= 1e30) {
        return std::copysign(kInf, value);
    }
    return value;
}

Section section_of(const std::string& word, int line)
{
    static const std::map<std::string, Section> table = {
        {"NAME", Section::name},       {"OBJSENSE", Section::objsense}, {"ROWS", Section::rows},
        {"COLUMNS", Section::columns}, {"RHS", Section::rhs},           {"RANGES", Section::ranges},
        {"BOUNDS", Section::bounds},   {"QUADOBJ", Section::quadobj},   {"QMATRIX", Section::qmatrix},
        {"ENDATA", Section::end},
    };
    const auto it = table.find(word);
    if (it == table.end()) {
        throw ParseError("unknown section '" + word + "'", line);
    }
    return it->second;
}

struct Builder
{
    QpsFile file;
    std::unordered_map<std::string, int> rows;
    std::unordered_map<std::string, int> cols;
    std::set<std::string> free_rows;
    std::map<std::pair<int, int>, double> coeffs;
    std::map<std::pair<int, int>, double> quad;

    int col(std::string_view name, int line) const
    {
        const auto it = cols.find(std::string(name));
        if (it == cols.end()) {
            throw ParseError("unknown column '" + std::string(name) + "'", line);
        }
        return it->second;
    }

    // -1 for the objective row, -2 for a free row.
    int row(std::string_view name, int line) const
    {
        const std::string s(name);
        if (s == file.objective_row) {
            return -1;
        }
        if (free_rows.count(s) != 0) {
            return -2;
        }
        const auto it = rows.find(s);
        if (it == rows.end()) {
            throw ParseError("unknown row '" + s + "'", line);
        }
        return it->second;
    }
};

void parse_pairs(const std::vector<std::string_view>& tok, std::size_t first, int line,
                 const std::function<void(std::string_view, double)>& use)
{
    if ((tok.size() - first) % 2 != 0 || tok.size() == first) {
        throw ParseError("expected name/value pairs", line);
    }
    for (std::size_t k = first; k < tok.size(); k += 2) {
        use(tok[k], number(tok[k + 1], line));
    }
}

} // namespace

int QpsFile::constraint_nonzeros() const
{
    return static_cast<int>(std::count_if(coefficients.begin(), coefficients.end(),
                                          [](const QpsEntry& e) { return e.value != 0.0; }));
}

int QpsFile::quadratic_columns() const
{
    std::set<int> c;
    for (const QpsEntry& e : quadratic) {
        if (e.value != 0.0) {
            c.insert(e.col);
        }
    }
    return static_cast<int>(c.size());
}

int QpsFile::quadratic_offdiag_lower() const
{
    return static_cast<int>(std::count_if(quadratic.begin(), quadratic.end(),
                                          [](const QpsEntry& e) { return e.row > e.col && e.value != 0.0; }));
}

double QpsFile::objective_value(const std::vector<double>& x) const
{
    double f = -objective_rhs;
    for (int j = 0; j < num_cols(); ++j) {
        f += objective[j] * x[j];
    }
    for (const QpsEntry& e : quadratic) {
        f += 0.5 * x[e.row] * e.value * x[e.col];
    }
    return maximize ? -f : f;
}

bool QpsFile::feasible(const std::vector<double>& x, double tol) const
{
    for (int j = 0; j < num_cols(); ++j) {
        if (x[j] < lower[j] - tol || x[j] > upper[j] + tol) {
            return false;
        }
    }
    std::vector<double> ax(row_names.size(), 0.0);
    for (const QpsEntry& e : coefficients) {
        ax[e.row] += e.value * x[e.col];
    }
    for (int i = 0; i < num_rows(); ++i) {
        double lo = -kInf;
        double hi = kInf;
        const double r = rhs[i];
        const char t = row_types[i];
        if (ranges[i]) {
            const double R = *ranges[i];
            if (t == 'G') {
                lo = r;
                hi = r + std::abs(R);
            } else if (t == 'L') {
                lo = r - std::abs(R);
                hi = r;
            } else if (R >= 0.0) {
                lo = r;
                hi = r + R;
            } else {
                lo = r + R;
                hi = r;
            }
        } else if (t == 'G') {
            lo = r;
        } else if (t == 'L') {
            hi = r;
        } else {
            lo = hi = r;
        }
        if (ax[i] < lo - tol || ax[i] > hi + tol) {
            return false;
        }
    }
    return true;
}

QpsFile parse_qps(std::string_view text)
{
    Builder B;
    QpsFile& F = B.file;
    Section section = Section::none;
    bool qmatrix_seen = false;
    bool quadobj_seen = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size() && section != Section::end) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '*') {
            continue;
        }
        const auto tok = split(line);
        if (tok.empty()) {
            continue;
        }
        const bool header = !std::isspace(static_cast<unsigned char>(line.front()));
        if (header) {
            section = section_of(upper(tok[0]), line_no);
            if (section == Section::name) {
                F.name = tok.size() > 1 ? std::string(tok[1]) : std::string();
            } else if (section == Section::objsense && tok.size() > 1) {
                const std::string s = upper(tok[1]);
                F.maximize = s == "MAX" || s == "MAXIMIZE";
            } else if (section == Section::quadobj) {
                quadobj_seen = true;
            } else if (section == Section::qmatrix) {
                qmatrix_seen = true;
            } else if (section == Section::rhs || section == Section::ranges || section == Section::bounds ||
                       section == Section::columns || section == Section::rows) {
                if (tok.size() > 1) {
                    throw ParseError("unexpected tokens after section header", line_no);
                }
            }
            if (qmatrix_seen && quadobj_seen) {
                throw ParseError("file has both QUADOBJ and QMATRIX", line_no);
            }
            continue;
        }

        switch (section) {
        case Section::none:
        case Section::name:
            throw ParseError("data line outside any section", line_no);
        case Section::objsense: {
            const std::string s = upper(tok[0]);
            if (s == "MAX" || s == "MAXIMIZE") {
                F.maximize = true;
            } else if (s == "MIN" || s == "MINIMIZE") {
                F.maximize = false;
            } else {
                throw ParseError("unknown objective sense '" + std::string(tok[0]) + "'", line_no);
            }
            break;
        }
        case Section::rows: {
            if (tok.size() != 2) {
                throw ParseError("ROWS entries have the form '<type> <name>'", line_no);
            }
            const std::string type = upper(tok[0]);
            const std::string name(tok[1]);
            if (B.rows.count(name) != 0 || name == F.objective_row || B.free_rows.count(name) != 0) {
                throw ParseError("duplicate row '" + name + "'", line_no);
            }
            if (type == "N") {
                if (F.objective_row.empty()) {
                    F.objective_row = name;
                } else {
                    B.free_rows.insert(name);
                    F.warnings.push_back("free row '" + name + "' ignored");
                }
            } else if (type == "L" || type == "G" || type == "E") {
                B.rows.emplace(name, F.num_rows());
                F.row_names.push_back(name);
                F.row_types.push_back(type[0]);
                F.rhs.push_back(0.0);
                F.ranges.emplace_back();
            } else {
                throw ParseError("unknown row type '" + type + "'", line_no);
            }
            break;
        }
        case Section::columns: {
            if (tok.size() >= 3 && upper(tok[1]) == "'MARKER'") {
                break; // integrality markers carry no continuous data
            }
            if (tok.size() != 3 && tok.size() != 5) {
                throw ParseError("COLUMNS entries have the form '<col> <row> <value> [<row> <value>]'", line_no);
            }
            const std::string cname(tok[0]);
            auto it = B.cols.find(cname);
            if (it == B.cols.end()) {
                it = B.cols.emplace(cname, F.num_cols()).first;
                F.col_names.push_back(cname);
                F.objective.push_back(0.0);
                F.lower.push_back(0.0);
                F.upper.push_back(kInf);
            }
            const int j = it->second;
            parse_pairs(tok, 1, line_no, [&](std::string_view rname, double v) {
                const int i = B.row(rname, line_no);
                if (i == -1) {
                    F.objective[j] += v;
                } else if (i >= 0) {
                    B.coeffs[{i, j}] += v;
                }
            });
            break;
        }
        case Section::rhs:
        case Section::ranges: {
            // An odd token count means a leading set name.
            const std::size_t first = tok.size() % 2 == 1 ? 1 : 0;
            const bool is_rhs = section == Section::rhs;
            parse_pairs(tok, first, line_no, [&](std::string_view rname, double v) {
                const int i = B.row(rname, line_no);
                if (i == -1) {
                    if (!is_rhs) {
                        throw ParseError("range on the objective row", line_no);
                    }
                    F.objective_rhs += v;
                } else if (i >= 0) {
                    if (is_rhs) {
                        F.rhs[i] += v;
                    } else {
                        F.ranges[i] = F.ranges[i].value_or(0.0) + v;
                    }
                }
            });
            break;
        }
        case Section::bounds: {
            const std::string type = upper(tok[0]);
            const bool needs_value = type == "UP" || type == "LO" || type == "FX" || type == "LI" || type == "UI";
            const bool no_value = type == "FR" || type == "MI" || type == "PL" || type == "BV";
            if (!needs_value && !no_value) {
                throw ParseError("unknown bound type '" + type + "'", line_no);
            }
            std::size_t col_tok = 1;
            if (needs_value) {
                if (tok.size() == 4) {
                    col_tok = 2;
                } else if (tok.size() != 3) {
                    throw ParseError("bound " + type + " needs a column and a value", line_no);
                }
            } else {
                if (tok.size() == 3 && type == "BV") {
                    col_tok = 1; // BV <col> <value>, value ignored
                } else if (tok.size() == 3) {
                    col_tok = 2;
                } else if (tok.size() == 4 && type == "BV") {
                    col_tok = 2;
                } else if (tok.size() != 2) {
                    throw ParseError("bound " + type + " takes a column name", line_no);
                }
            }
            const int j = B.col(tok[col_tok], line_no);
            const double v = needs_value ? number(tok[col_tok + 1], line_no) : 0.0;
            if (type == "UP" || type == "UI") {
                if (v < 0.0 && F.lower[j] == 0.0) {
                    F.lower[j] = -kInf;
                    F.warnings.push_back("negative upper bound on '" + F.col_names[j] +
                                         "' with zero lower bound; lower bound set to -inf");
                }
                F.upper[j] = v;
            } else if (type == "LO" || type == "LI") {
                F.lower[j] = v;
            } else if (type == "FX") {
                F.lower[j] = v;
                F.upper[j] = v;
            } else if (type == "FR") {
                F.lower[j] = -kInf;
                F.upper[j] = kInf;
            } else if (type == "MI") {
                F.lower[j] = -kInf;
            } else if (type == "PL") {
                F.upper[j] = kInf;
            } else { // BV
                F.lower[j] = 0.0;
                F.upper[j] = 1.0;
            }
            break;
        }
        case Section::quadobj:
        case Section::qmatrix: {
            if (tok.size() != 3) {
                throw ParseError("quadratic entries have the form '<col> <col> <value>'", line_no);
            }
            const int i = B.col(tok[0], line_no);
            const int j = B.col(tok[1], line_no);
            const double v = number(tok[2], line_no);
            if (section == Section::qmatrix || i == j) {
                B.quad[{i, j}] += v;
            } else {
                B.quad[{i, j}] += v;
                B.quad[{j, i}] += v;
            }
            break;
        }
        case Section::end:
            break;
        }
        if (pos > text.size()) {
            break;
        }
    }
    if (F.objective_row.empty() && F.num_rows() == 0 && F.num_cols() == 0) {
        throw ParseError("no ROWS or COLUMNS data", line_no);
    }
    for (const auto& [ij, v] : B.coeffs) {
        F.coefficients.push_back({ij.first, ij.second, v});
    }
    for (const auto& [ij, v] : B.quad) {
        F.quadratic.push_back({ij.first, ij.second, v});
    }
    return F;
}

QpsFile read_qps_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    QpsFile f = parse_qps(ss.str());
    return f;
}

QpProblem to_qp_problem(const QpsFile& F)
{
    const int n = F.num_cols();
    const double sense = F.maximize ? -1.0 : 1.0;

    std::vector<Eigen::Triplet<double>> qt;
    for (const QpsEntry& e : F.quadratic) {
        qt.emplace_back(e.row, e.col, sense * e.value);
    }
    SparseMatrix Q(n, n);
    Q.setFromTriplets(qt.begin(), qt.end());
    Vector q(n);
    for (int j = 0; j < n; ++j) {
        q[j] = sense * F.objective[j];
    }

    // Row-wise view of the constraint matrix.
    std::vector<std::vector<std::pair<int, double>>> rows(F.row_names.size());
    for (const QpsEntry& e : F.coefficients) {
        rows[e.row].emplace_back(e.col, e.value);
    }

    std::vector<Eigen::Triplet<double>> at;
    std::vector<double> b;
    std::vector<Eigen::Triplet<double>> ct;
    std::vector<double> d;
    const auto add_ineq = [&](const std::vector<std::pair<int, double>>& row, double scale, double rhs) {
        const int r = static_cast<int>(b.size());
        for (const auto& [j, v] : row) {
            at.emplace_back(r, j, scale * v);
        }
        b.push_back(scale * rhs);
    };
    const auto add_eq = [&](const std::vector<std::pair<int, double>>& row, double rhs) {
        const int r = static_cast<int>(d.size());
        for (const auto& [j, v] : row) {
            ct.emplace_back(r, j, v);
        }
        d.push_back(rhs);
    };

    for (int i = 0; i < F.num_rows(); ++i) {
        const char t = F.row_types[i];
        const double r = F.rhs[i];
        if (F.ranges[i] && !(t == 'E' && *F.ranges[i] == 0.0)) {
            const double R = *F.ranges[i];
            double lo = r;
            double hi = r;
            if (t == 'G') {
                hi = r + std::abs(R);
            } else if (t == 'L') {
                lo = r - std::abs(R);
            } else if (R > 0.0) {
                hi = r + R;
            } else {
                lo = r + R;
            }
            add_ineq(rows[i], 1.0, lo);
            add_ineq(rows[i], -1.0, hi);
        } else if (t == 'G') {
            add_ineq(rows[i], 1.0, r);
        } else if (t == 'L') {
            add_ineq(rows[i], -1.0, r);
        } else {
            add_eq(rows[i], r);
        }
    }
    for (int j = 0; j < n; ++j) {
        const double lo = F.lower[j];
        const double up = F.upper[j];
        if (lo > up) {
            throw InvalidInput("column '" + F.col_names[j] + "' has lower bound " + std::to_string(lo) +
                               " above upper bound " + std::to_string(up));
        }
        const std::vector<std::pair<int, double>> unit = {{j, 1.0}};
        if (lo == up) {
            add_eq(unit, lo);
            continue;
        }
        if (std::isfinite(lo)) {
            add_ineq(unit, 1.0, lo);
        }
        if (std::isfinite(up)) {
            add_ineq(unit, -1.0, up);
        }
    }

    SparseMatrix A(static_cast<int>(b.size()), n);
    A.setFromTriplets(at.begin(), at.end());
    SparseMatrix C(static_cast<int>(d.size()), n);
    C.setFromTriplets(ct.begin(), ct.end());
    QpProblem problem(std::move(Q), std::move(q), std::move(A), Eigen::Map<const Vector>(b.data(), b.size()),
                      std::move(C), Eigen::Map<const Vector>(d.data(), d.size()), F.name);
    problem.set_objective_constant(-sense * F.objective_rhs);
    return problem;
}

std::vector<std::string> builtin_names()
{
    return {"synthetic2d", "equality3d"};
}

QpProblem builtin_problem(std::string_view name)
{
    if (name == "synthetic2d") {
        Eigen::MatrixXd A(4, 2);
        A << 1, 1, 0, 1, -1, 0, 0, -1;
        Vector b(4);
        b << 0.65, -0.1, -0.85, -0.8;
        return QpProblem(sparse_from_dense(Eigen::MatrixXd::Identity(2, 2)), Vector::Zero(2), sparse_from_dense(A),
                         b, SparseMatrix(0, 2), Vector(0), "synthetic2d");
    }
    if (name == "equality3d") {
        Eigen::MatrixXd Q = Eigen::Vector3d(1, 2, 3).asDiagonal();
        Vector q(3);
        q << -1, 0, 1;
        Eigen::MatrixXd C(1, 3);
        C << 1, 1, 1;
        return QpProblem(sparse_from_dense(Q), q, SparseMatrix(0, 3), Vector(0), sparse_from_dense(C),
                         Vector::Ones(1), "equality3d");
    }
    std::string list;
    for (const std::string& s : builtin_names()) {
        list += (list.empty() ? "" : ", ") + s;
    }
    throw InvalidInput("unknown builtin problem '" + std::string(name) + "' (available: " + list + ")");
}

namespace
{

bool ends_with(const std::string& s, std::string_view suffix)
{
    if (s.size() < suffix.size()) {
        return false;
    }
    return upper(std::string_view(s).substr(s.size() - suffix.size())) == upper(suffix);
}

json triplets(const SparseMatrix& M)
{
    json rows = json::array();
    json cols = json::array();
    json vals = json::array();
    for (int k = 0; k < M.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(M, k); it; ++it) {
            rows.push_back(it.row());
            cols.push_back(it.col());
            vals.push_back(it.value());
        }
    }
    return {{"rows", rows}, {"cols", cols}, {"vals", vals}};
}

json dense(const Vector& v)
{
    return std::vector<double>(v.data(), v.data() + v.size());
}

Vector vector_field(const json& j, const char* key, std::optional<int> expected)
{
    if (!j.contains(key)) {
        throw InvalidInput(std::string("missing field '") + key + "'");
    }
    const auto v = j.at(key).get<std::vector<double>>();
    if (expected && static_cast<int>(v.size()) != *expected) {
        throw InvalidInput(std::string("field '") + key + "' has length " + std::to_string(v.size()) +
                           ", expected " + std::to_string(*expected));
    }
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

SparseMatrix matrix_field(const json& j, const char* key, int rows, int cols)
{
    if (!j.contains(key)) {
        throw InvalidInput(std::string("missing field '") + key + "'");
    }
    const json& t = j.at(key);
    const auto r = t.at("rows").get<std::vector<int>>();
    const auto c = t.at("cols").get<std::vector<int>>();
    const auto v = t.at("vals").get<std::vector<double>>();
    if (r.size() != c.size() || c.size() != v.size()) {
        throw InvalidInput(std::string("field '") + key + "': triplet arrays differ in length");
    }
    std::vector<Eigen::Triplet<double>> tr;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (r[k] < 0 || r[k] >= rows || c[k] < 0 || c[k] >= cols) {
            throw InvalidInput(std::string("field '") + key + "': entry " + std::to_string(k) + " out of range");
        }
        tr.emplace_back(r[k], c[k], v[k]);
    }
    SparseMatrix M(rows, cols);
    M.setFromTriplets(tr.begin(), tr.end());
    return M;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInput("cannot write '" + path + "'");
    }
    out << text;
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

template <class Iterate>
SolutionRecord make_record(const QpProblem& problem, const Iterate& z, const ExplicitIterate& pd, SolveStatus status,
                           const std::string& method, int iterations)
{
    SolutionRecord sol;
    sol.problem = problem.name();
    sol.method = method;
    sol.status = status;
    sol.x = pd.x;
    sol.lambda = pd.lambda;
    sol.gamma = pd.gamma;
    sol.s = pd.s;
    if constexpr (std::is_same_v<Iterate, ImplicitIterate>) {
        sol.v = z.v;
    }
    const ResidualVector r = residuals(problem, pd, 0.0);
    sol.r_x = inf_norm(r.r_x);
    sol.r_i = inf_norm(r.r_i);
    sol.r_e = inf_norm(r.r_e);
    sol.gap = duality_gap(pd.lambda, pd.s);
    sol.residual = std::max({sol.r_x, sol.r_i, sol.r_e, sol.gap});
    sol.objective = problem.objective(pd.x);
    sol.iterations = iterations;
    return sol;
}

} // namespace

QpProblem load_problem(const std::string& source)
{
    constexpr std::string_view prefix = "builtin:";
    if (source.rfind(prefix, 0) == 0) {
        return builtin_problem(std::string_view(source).substr(prefix.size()));
    }
    if (ends_with(source, ".json")) {
        return read_problem_json(source);
    }
    if (ends_with(source, ".qps") || ends_with(source, ".mps") || ends_with(source, ".sif")) {
        QpProblem p = to_qp_problem(read_qps_file(source));
        if (p.name().empty()) {
            p.set_name(source);
        }
        return p;
    }
    throw InvalidInput("cannot infer the format of '" + source +
                       "' (use builtin:<name>, a .qps/.mps file or a .json file)");
}

std::string problem_to_json(const QpProblem& problem)
{
    json j;
    j["schema"] = "qp_v1";
    j["name"] = problem.name();
    j["n"] = problem.n();
    j["m"] = problem.m();
    j["p"] = problem.p();
    j["Q"] = triplets(problem.Q());
    j["q"] = dense(problem.q());
    j["A"] = triplets(problem.A());
    j["b"] = dense(problem.b());
    j["C"] = triplets(problem.C());
    j["d"] = dense(problem.d());
    j["objective_constant"] = problem.objective_constant();
    return j.dump(1);
}

QpProblem problem_from_json(std::string_view text)
{
    const json j = parse_json(text);
    try {
        if (j.value("schema", std::string()) != "qp_v1") {
            throw InvalidInput("problem JSON must have schema \"qp_v1\"");
        }
        const int n = j.at("n").get<int>();
        const int m = j.at("m").get<int>();
        const int p = j.at("p").get<int>();
        if (n < 0 || m < 0 || p < 0) {
            throw InvalidInput("negative dimension in problem JSON");
        }
        QpProblem problem(matrix_field(j, "Q", n, n), vector_field(j, "q", n), matrix_field(j, "A", m, n),
                          vector_field(j, "b", m), matrix_field(j, "C", p, n), vector_field(j, "d", p),
                          j.value("name", std::string()));
        problem.set_objective_constant(j.value("objective_constant", 0.0));
        return problem;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("invalid problem JSON: ") + e.what());
    }
}

void write_problem_json(const QpProblem& problem, const std::string& path)
{
    spill(path, problem_to_json(problem) + "\n");
}

QpProblem read_problem_json(const std::string& path)
{
    return problem_from_json(slurp(path));
}

SolutionRecord make_solution_record(const QpProblem& problem, const ExplicitIterate& z, SolveStatus status,
                                    const std::string& method, int iterations)
{
    return make_record(problem, z, z, status, method, iterations);
}

SolutionRecord make_solution_record(const QpProblem& problem, const ImplicitIterate& z, SolveStatus status,
                                    const std::string& method, int iterations)
{
    return make_record(problem, z, z.primal_dual(), status, method, iterations);
}

std::string solution_to_json(const SolutionRecord& sol)
{
    json j;
    j["schema"] = "solution_v1";
    j["problem"] = sol.problem;
    j["method"] = sol.method;
    j["status"] = to_string(sol.status);
    j["iterations"] = sol.iterations;
    j["objective"] = sol.objective;
    j["x"] = dense(sol.x);
    j["lambda"] = dense(sol.lambda);
    j["gamma"] = dense(sol.gamma);
    j["s"] = dense(sol.s);
    if (sol.v) {
        j["v"] = dense(*sol.v);
    }
    j["residuals"] = {{"r_x", sol.r_x}, {"r_i", sol.r_i}, {"r_e", sol.r_e}, {"gap", sol.gap},
                      {"kkt", sol.residual}};
    return j.dump(1);
}

SolutionRecord solution_from_json(std::string_view text)
{
    const json j = parse_json(text);
    try {
        if (j.value("schema", std::string()) != "solution_v1") {
            throw InvalidInput("solution JSON must have schema \"solution_v1\"");
        }
        SolutionRecord sol;
        sol.problem = j.value("problem", std::string());
        sol.method = j.value("method", std::string());
        sol.status = parse_status(j.at("status").get<std::string>());
        sol.iterations = j.value("iterations", 0);
        sol.objective = j.at("objective").get<double>();
        sol.x = vector_field(j, "x", std::nullopt);
        sol.lambda = vector_field(j, "lambda", std::nullopt);
        sol.gamma = vector_field(j, "gamma", std::nullopt);
        sol.s = vector_field(j, "s", static_cast<int>(sol.lambda.size()));
        if (j.contains("v")) {
            sol.v = vector_field(j, "v", static_cast<int>(sol.lambda.size()));
        }
        const json& r = j.at("residuals");
        sol.r_x = r.at("r_x").get<double>();
        sol.r_i = r.at("r_i").get<double>();
        sol.r_e = r.at("r_e").get<double>();
        sol.gap = r.at("gap").get<double>();
        sol.residual = r.at("kkt").get<double>();
        return sol;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("invalid solution JSON: ") + e.what());
    }
}

void write_solution(const SolutionRecord& sol, const std::string& path)
{
    spill(path, solution_to_json(sol) + "\n");
}

SolutionRecord read_solution(const std::string& path)
{
    return solution_from_json(slurp(path));
}

} // namespace ipqp
