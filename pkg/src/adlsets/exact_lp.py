"""Exact phase-one simplex over the rationals.

Only feasibility of ``A x = b, x >= 0`` is needed.  The solver returns
either a feasible point or a Farkas vector ``y`` with ``y A <= 0`` and
``y b > 0``.  Bland's rule guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None


def feasible_point(a: Sequence[Sequence], b: Sequence) -> LPResult:
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    signs = []
    for i in range(m):
        s = -1 if b[i] < 0 else 1
        signs.append(s)
        rows.append([Fraction(s * v) for v in a[i]] + [Fraction(int(k == i)) for k in range(m)] + [Fraction(s * b[i])])
    width = n + m
    basis = [n + i for i in range(m)]
    # reduced costs for min sum(artificials): c_j - sum of column j over rows
    cost = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    for r in rows:
        cost = [c - v for c, v in zip(cost, r)]
    cost[width:] = [-sum((r[width] for r in rows), Fraction(0))]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[width] / r[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise ArithmeticError("phase-one problem is unbounded, which cannot happen")
        p = best[1]
        piv = rows[p][enter]
        rows[p] = [v / piv for v in rows[p]]
        for i in range(m):
            if i != p and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [u - f * v for u, v in zip(rows[i], rows[p])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [u - f * v for u, v in zip(cost, rows[p])]
        basis[p] = enter

    optimum = -cost[width]
    if optimum == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = rows[i][width]
        return LPResult(True, x=tuple(x))
    # duals of the sign-adjusted rows: y_i = 1 - reduced cost of artificial i
    y = tuple(signs[i] * (1 - cost[n + i]) for i in range(m))
    return LPResult(False, farkas=y)
