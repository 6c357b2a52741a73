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

#ifndef IPQP_KKT_HPP
#define IPQP_KKT_HPP

#include <string>
#include <vector>

#include "ipqp/linalg/sparse_symmetric.hpp"
#include "ipqp/qp_problem.hpp"

namespace ipqp
{

enum class Formulation
{
    explicit_e,
    implicit_j,
};

std::string to_string(Formulation f);

/**
 * Condensed Newton system
 *
 *     [ H   -A'  -C' ] [dx]
 *     [ -A  -D    0  ] [dy] = rhs
 *     [ -C   0    0  ] [dg]
 *
 * with H = Q, D = inv(Lambda) S for the explicit formulation and
 * H = Q - A'A, D = B_mu(-v) for the implicit one. Unknowns are ordered
 * x (n), then the inequality block (m), then the equality block (p).
 */
struct KktSystem
{
    Formulation formulation = Formulation::explicit_e;
    int n = 0;
    int m = 0;
    int p = 0;
    linalg::SparseSymmetric<double> matrix;
    Vector rhs;

    int dim() const { return n + m + p; }
    /// Block sizes (n, m, p) for block-Jacobi preconditioning.
    std::vector<int> partition() const { return {n, m, p}; }
    /// D, i.e. minus the (2,2) diagonal.
    Vector dual_diagonal() const;
    /// Overwrites the (2,2) diagonal with -D without touching the pattern.
    void set_dual_diagonal(const Vector& D);
};

using ExplicitKkt = KktSystem;
using ImplicitKkt = KktSystem;

/// Builds the matrix above with the given (1,1) block and D.
KktSystem build_kkt(Formulation formulation, const SparseMatrix& H, const SparseMatrix& A, const SparseMatrix& C,
                    const Vector& D, Vector rhs);

/// Uncondensed step components.
struct NewtonStep
{
    Vector dx;
    Vector dlambda;
    Vector dgamma;
    Vector ds;
    Vector dv; // implicit formulation only

    void scale(double alpha);
};

} // namespace ipqp

#endif // IPQP_KKT_HPP
