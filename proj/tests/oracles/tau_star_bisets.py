"""Cut-LP optimum over the bead graph by explicit enumeration of all bisets.

Writes one line per instance: name and tau* as a reduced fraction. The
values are frozen into test_bead.cpp.
"""
import itertools
import math
from fractions import Fraction

from scipy.optimize import linprog

EPS = 1e-9


def beads(d):
    return max(math.ceil(d - EPS) - 1, 0)


def tau_star(points, demands, unstable, k=None):
    n = len(points)
    req = {}
    for u, v, r in demands:
        if r > 0:
            req[(min(u, v), max(u, v))] = r
    if k is None:
        k = max([1] + list(req.values()))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            d = math.dist(points[u], points[v])
            c = beads(d)
            for copy in range(k):
                edges.append((u, v, c if c > 0 else (0 if copy == 0 else 1)))
    rows, rhs = [], []
    # 0 = outside, 1 = boundary, 2 = inner
    for labels in itertools.product(range(3), repeat=n):
        inner = {i for i in range(n) if labels[i] == 2}
        gamma = {i for i in range(n) if labels[i] == 1}
        if not inner:
            continue
        if not gamma <= set(unstable):
            continue
        best = 0
        for (u, v), r in req.items():
            if (labels[u] == 2 and labels[v] == 0) or (labels[v] == 2 and labels[u] == 0):
                best = max(best, r)
        f = best - len(gamma)
        if f <= 0:
            continue
        row = []
        for (u, v, _) in edges:
            cov = (labels[u] == 2 and labels[v] == 0) or (labels[v] == 2 and labels[u] == 0)
            row.append(-1.0 if cov else 0.0)
        rows.append(row)
        rhs.append(-float(f))
    cost = [float(c) for (_, _, c) in edges]
    if not rows:
        return Fraction(0)
    res = linprog(cost, A_ub=rows, b_ub=rhs, bounds=[(0, 1)] * len(edges), method="highs")
    assert res.status == 0, res.message
    return Fraction(res.fun).limit_denominator(1000)


def pentagon():
    return [(math.cos(2 * math.pi * i / 5), math.sin(2 * math.pi * i / 5)) for i in range(5)]


def all_pairs(n, r):
    return [(i, j, r) for i in range(n) for j in range(i + 1, n)]


CASES = {
    "collinear3_r1": ([(0, 0), (3, 0)], [(0, 1, 1)], []),
    "collinear3_r2": ([(0, 0), (3, 0)], [(0, 1, 2)], []),
    "square_r2": ([(0, 0), (1, 0), (1, 1), (0, 1)], all_pairs(4, 2), []),
    "pentagon_r1": (pentagon(), all_pairs(5, 1), []),
    "pentagon_r2": (pentagon(), all_pairs(5, 2), []),
    "triangle2_r2_b0": ([(0, 0), (2, 0), (1, math.sqrt(3))], all_pairs(3, 2), [0]),
    "mixed5": ([(0, 0), (2.5, 0.3), (1.1, 2.2), (3.4, 2.9), (0.2, 3.5)],
               [(0, 3, 2), (1, 4, 1), (2, 3, 2), (0, 1, 1)], [2]),
    "path_gaps2": ([(0, 0), (2, 0), (4, 0)], [(0, 1, 1), (1, 2, 1)], []),
    "star_b_center": ([(0, 0), (1.8, 0), (-1.8, 0), (0, 1.8)], [(1, 2, 2), (1, 3, 2), (2, 3, 1)], [0]),
}

if __name__ == "__main__":
    for name, (pts, dem, b) in CASES.items():
        t = tau_star(pts, dem, b)
        print(f"{name} {t.numerator}/{t.denominator}")
