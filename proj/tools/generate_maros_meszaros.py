#!/usr/bin/env python3
# Copyright 2026 The ipqp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the small Maros-Meszaros instances in data/maros_meszaros as QPS.

The files are rebuilt from the problem definitions (Hock-Schittkowski
problems and the CUTE CVXQP family) rather than copied from the original
distribution, so row and column names differ from it. Dimensions, nonzero
counts and optimal values match the published listing.

Usage: generate_maros_meszaros.py [output_dir]
"""

import argparse
import collections
import os

INF = float("inf")


class Qp:
    def __init__(self, name, n):
        self.name = name
        self.n = n
        self.c = [0.0] * n
        self.const = 0.0
        self.quad = collections.defaultdict(float)  # lower triangle, (i, j) i >= j
        self.rows = []  # (type, {col: val}, rhs)
        self.ranges = {}  # row index -> RANGES value
        self.lo = [0.0] * n
        self.up = [INF] * n

    def add_quad(self, i, j, v):
        if i < j:
            i, j = j, i
        self.quad[(i, j)] += v

    def add_square(self, coeffs, weight=1.0):
        # weight * (sum_k a_k x_k)^2 contributes 2*weight*a_i*a_j to Q.
        merged = collections.defaultdict(float)
        for j, a in coeffs:
            merged[j] += a
        items = sorted(merged.items())
        for p, (i, ai) in enumerate(items):
            for j, aj in items[: p + 1]:
                self.add_quad(i, j, 2.0 * weight * ai * aj)

    def row(self, kind, coeffs, rhs):
        merged = collections.defaultdict(float)
        for j, a in coeffs:
            merged[j] += a
        self.rows.append((kind, {j: a for j, a in merged.items() if a != 0.0}, rhs))

    def ranged(self, coeffs, lo, hi):
        # G row with RANGES |R| = hi - lo gives lo <= row <= hi.
        self.row("G", coeffs, lo)
        self.ranges[len(self.rows) - 1] = hi - lo

    def free(self):
        self.lo = [-INF] * self.n
        self.up = [INF] * self.n


def fmt(v):
    return repr(float(v)) if v != int(v) or abs(v) >= 1e15 else str(int(v))


def write_qps(qp, path):
    cols = [f"X{j + 1}" for j in range(qp.n)]
    rows = [f"R{i + 1}" for i in range(len(qp.rows))]
    out = [f"NAME          {qp.name}", "ROWS", " N  OBJ"]
    for r, (kind, _, _) in zip(rows, qp.rows):
        out.append(f" {kind}  {r}")
    out.append("COLUMNS")
    for j, cname in enumerate(cols):
        entries = []
        if qp.c[j] != 0.0:
            entries.append(("OBJ", qp.c[j]))
        for r, (_, coeffs, _) in zip(rows, qp.rows):
            if j in coeffs:
                entries.append((r, coeffs[j]))
        if not entries:
            entries.append(("OBJ", 0.0))
        for rname, v in entries:
            out.append(f"    {cname:<8}  {rname:<8}  {fmt(v)}")
    out.append("RHS")
    for r, (_, _, rhs) in zip(rows, qp.rows):
        if rhs != 0.0:
            out.append(f"    RHS       {r:<8}  {fmt(rhs)}")
    if qp.const != 0.0:
        out.append(f"    RHS       OBJ       {fmt(-qp.const)}")
    if qp.ranges:
        out.append("RANGES")
        for i in sorted(qp.ranges):
            out.append(f"    RNG       {rows[i]:<8}  {fmt(qp.ranges[i])}")
    bounds = []
    for j, cname in enumerate(cols):
        lo, up = qp.lo[j], qp.up[j]
        if lo == -INF and up == INF:
            bounds.append(f" FR BND       {cname}")
            continue
        if lo == up:
            bounds.append(f" FX BND       {cname:<8}  {fmt(lo)}")
            continue
        if lo == -INF:
            bounds.append(f" MI BND       {cname}")
        elif lo != 0.0:
            bounds.append(f" LO BND       {cname:<8}  {fmt(lo)}")
        if up != INF:
            bounds.append(f" UP BND       {cname:<8}  {fmt(up)}")
    if bounds:
        out.append("BOUNDS")
        out.extend(bounds)
    out.append("QUADOBJ")
    for (i, j) in sorted(qp.quad, key=lambda ij: (ij[1], ij[0])):
        v = qp.quad[(i, j)]
        if v != 0.0:
            out.append(f"    {cols[j]:<8}  {cols[i]:<8}  {fmt(v)}")
    out.append("ENDATA")
    with open(path, "w") as f:
        f.write("\n".join(out) + "\n")


def hs21():
    qp = Qp("HS21", 2)
    qp.add_quad(0, 0, 0.02)
    qp.add_quad(1, 1, 2.0)
    qp.const = -100.0
    qp.row("G", [(0, 10.0), (1, -1.0)], 10.0)
    qp.lo = [2.0, -50.0]
    qp.up = [50.0, 50.0]
    return qp


def hs35():
    qp = Qp("HS35", 3)
    qp.add_quad(0, 0, 4.0)
    qp.add_quad(1, 1, 4.0)
    qp.add_quad(2, 2, 2.0)
    qp.add_quad(1, 0, 2.0)
    qp.add_quad(2, 0, 2.0)
    qp.c = [-8.0, -6.0, -4.0]
    qp.const = 9.0
    qp.row("L", [(0, 1.0), (1, 1.0), (2, 2.0)], 3.0)
    return qp


def hs5x(name, a, rhs1, box):
    # (a x1 - x2)^2 + (x2 + x3 - 2)^2 + (x4 - 1)^2 + (x5 - 1)^2
    qp = Qp(name, 5)
    qp.add_square([(0, a), (1, -1.0)])
    qp.add_square([(1, 1.0), (2, 1.0)])
    qp.add_square([(3, 1.0)])
    qp.add_square([(4, 1.0)])
    qp.c = [0.0, -4.0, -4.0, -2.0, -2.0]
    qp.const = 6.0
    qp.row("E", [(0, 1.0), (1, 3.0)], rhs1)
    qp.row("E", [(2, 1.0), (3, 1.0), (4, -2.0)], 0.0)
    qp.row("E", [(1, 1.0), (4, -1.0)], 0.0)
    if box is None:
        qp.free()
    else:
        qp.lo = [-box] * 5
        qp.up = [box] * 5
    return qp


def hs76():
    qp = Qp("HS76", 4)
    qp.add_quad(0, 0, 2.0)
    qp.add_quad(1, 1, 1.0)
    qp.add_quad(2, 2, 2.0)
    qp.add_quad(3, 3, 1.0)
    qp.add_quad(2, 0, -1.0)
    qp.add_quad(3, 2, 1.0)
    qp.c = [-1.0, -3.0, 1.0, -1.0]
    qp.row("L", [(0, 1.0), (1, 2.0), (2, 1.0), (3, 1.0)], 5.0)
    qp.row("L", [(0, 3.0), (1, 1.0), (2, 2.0), (3, -1.0)], 4.0)
    qp.row("G", [(1, 1.0), (2, 4.0)], 1.5)
    return qp


def hs118():
    qp = Qp("HS118", 15)
    lin = [2.3, 1.7, 2.2]
    quad = [0.0001, 0.0001, 0.00015]
    for k in range(5):
        for t in range(3):
            qp.c[3 * k + t] = lin[t]
            qp.add_quad(3 * k + t, 3 * k + t, 2.0 * quad[t])
    for j in range(1, 5):
        for t, width in enumerate([13.0, 14.0, 13.0]):
            qp.ranged([(3 * j + t, 1.0), (3 * j - 3 + t, -1.0)], -7.0, width - 7.0)
    for k, demand in enumerate([60.0, 50.0, 70.0, 85.0, 100.0]):
        qp.row("G", [(3 * k, 1.0), (3 * k + 1, 1.0), (3 * k + 2, 1.0)], demand)
    qp.lo = [8.0, 43.0, 3.0] + [0.0] * 12
    qp.up = [21.0, 57.0, 16.0] + [90.0, 120.0, 60.0] * 4
    return qp


def hs268():
    # ||D x - d||^2 with a known zero at x = (1, 2, -1, 3, -4).
    D = [
        [-74.0, 80.0, 18.0, -11.0, -4.0],
        [14.0, -69.0, 21.0, 28.0, 0.0],
        [66.0, -72.0, -5.0, 7.0, 1.0],
        [-12.0, 66.0, -30.0, -23.0, 3.0],
        [3.0, 8.0, -7.0, -4.0, 1.0],
    ]
    d = [51.0, -61.0, -56.0, 69.0, 10.0]
    qp = Qp("HS268", 5)
    for row in D:
        qp.add_square(list(enumerate(row)))
    qp.c = [-2.0 * sum(D[k][j] * d[k] for k in range(5)) for j in range(5)]
    qp.const = sum(v * v for v in d)
    qp.row("G", [(j, -1.0) for j in range(5)], -5.0)
    qp.row("G", list(enumerate([10.0, 10.0, -3.0, 5.0, 4.0])), 20.0)
    qp.row("G", list(enumerate([-8.0, 1.0, -2.0, -5.0, 3.0])), -40.0)
    qp.row("G", list(enumerate([8.0, -1.0, 2.0, 5.0, -3.0])), 11.0)
    qp.row("G", list(enumerate([-4.0, -2.0, 3.0, -5.0, 1.0])), -30.0)
    qp.free()
    return qp


def genhs28():
    qp = Qp("GENHS28", 10)
    for i in range(9):
        qp.add_square([(i, 1.0), (i + 1, 1.0)])
    for i in range(8):
        qp.row("E", [(i, 1.0), (i + 1, 2.0), (i + 2, 3.0)], 1.0)
    qp.free()
    return qp


def tame():
    qp = Qp("TAME", 2)
    qp.add_square([(0, 1.0), (1, -1.0)])
    qp.row("E", [(0, 1.0), (1, 1.0)], 1.0)
    return qp


def cvxqp(name, n, m):
    qp = Qp(name, n)
    for i in range(1, n + 1):
        idx = [i, (2 * i - 1) % n + 1, (3 * i - 1) % n + 1]
        qp.add_square([(k - 1, 1.0) for k in idx], weight=i / 2.0)
    for i in range(1, m + 1):
        idx = [(i, 1.0), ((4 * i - 1) % n + 1, 2.0), ((5 * i - 1) % n + 1, 3.0)]
        qp.row("E", [(k - 1, a) for k, a in idx], 6.0)
    qp.lo = [0.1] * n
    qp.up = [10.0] * n
    return qp


def instances():
    return [
        hs21(),
        hs35(),
        hs5x("HS51", 1.0, 4.0, None),
        hs5x("HS52", 4.0, 0.0, None),
        hs5x("HS53", 1.0, 0.0, 10.0),
        hs76(),
        hs118(),
        hs268(),
        genhs28(),
        tame(),
        cvxqp("CVXQP1_S", 100, 50),
        cvxqp("CVXQP2_S", 100, 25),
        cvxqp("CVXQP3_S", 100, 75),
    ]


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    parser = argparse.ArgumentParser(description="Write the bundled Maros-Meszaros QPS instances.")
    parser.add_argument("out_dir", nargs="?", default=os.path.join(here, "..", "data", "maros_meszaros"))
    out_dir = parser.parse_args().out_dir
    os.makedirs(out_dir, exist_ok=True)
    for qp in instances():
        path = os.path.join(out_dir, qp.name + ".QPS")
        write_qps(qp, path)
        nz = sum(len(c) for _, c, _ in qp.rows)
        qn = len({j for (i, j), v in qp.quad.items() if v != 0.0} | {i for (i, j), v in qp.quad.items() if v != 0.0})
        qnz = sum(1 for (i, j), v in qp.quad.items() if i != j and v != 0.0)
        print(f"{qp.name:<10} M={len(qp.rows):<3} N={qp.n:<4} NZ={nz:<4} QN={qn:<4} QNZ={qnz}")


if __name__ == "__main__":
    main()
