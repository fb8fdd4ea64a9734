#!/usr/bin/env python3
"""Feasibility check of an SDPA sparse file with cvxpy.

Usage: sdpa_cvxpy.py INPUT.dat-s OUTPUT

Maximizes s subject to sum_i y_i F_i - F_0 >= s I (s <= 1) and writes an
SDPA-style "phase.value" line: pdOPT when the optimal s is >= -tol, pINF when
it is below, noINFO when the solver fails.
"""

import argparse
import re
import sys

import cvxpy as cp
import numpy as np


def read_sdpa(path):
    with open(path) as f:
        lines = [l.strip() for l in f if l.strip() and l.lstrip()[0] not in '*"']
    nums = lambda s: [x for x in re.split(r"[\s,{}()]+", s) if x]
    m = int(nums(lines[0])[0])
    nblocks = int(nums(lines[1])[0])
    sizes = [int(x) for x in nums(lines[2])[:nblocks]]
    mats = [[np.zeros((abs(n), abs(n))) for n in sizes] for _ in range(m + 1)]
    for line in lines[4:]:
        mat, blk, i, j, val = nums(line)[:5]
        mat, blk, i, j, val = int(mat), int(blk) - 1, int(i) - 1, int(j) - 1, float(val)
        mats[mat][blk][i, j] = val
        mats[mat][blk][j, i] = val
    return m, sizes, mats


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("input")
    ap.add_argument("output")
    ap.add_argument("--tol", type=float, default=1e-6)
    ap.add_argument("--solver", default="CLARABEL")
    args = ap.parse_args()

    m, sizes, mats = read_sdpa(args.input)
    y = cp.Variable(m)
    s = cp.Variable()
    cons = [s <= 1]
    for b, n in enumerate(sizes):
        expr = sum(y[i] * mats[i + 1][b] for i in range(m)) - mats[0][b]
        if n < 0:
            cons.append(cp.diag(expr) >= s)
        else:
            sym = (expr + expr.T) / 2
            cons.append(sym - s * np.eye(n) >> 0)
    prob = cp.Problem(cp.Maximize(s), cons)
    try:
        prob.solve(solver=args.solver)
        status = prob.status
    except cp.error.SolverError as e:
        status = "error: %s" % e
    if status in ("optimal", "optimal_inaccurate"):
        phase = "pdOPT" if s.value >= -args.tol else "pINF"
    else:
        phase = "noINFO"
    with open(args.output, "w") as f:
        f.write("solver = cvxpy/%s status = %s\n" % (args.solver, status))
        if s.value is not None:
            f.write("max_min_eigenvalue = %.12e\n" % s.value)
        f.write("phase.value = %s\n" % phase)
    return 0


if __name__ == "__main__":
    sys.exit(main())
