"""Exact integer and rational linear algebra used by the lattice code.

Everything here works with Python ints and :class:`fractions.Fraction`;
no floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def to_fractions(v: Iterable) -> RatVec:
    return tuple(Fraction(x) for x in v)


def is_integral(v: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


class QuotientLattice:
    """The quotient ``Z^r / L`` for a sublattice ``L`` given by generators.

    A Smith decomposition ``U A V = S`` of the generator matrix ``A`` (whose
    columns are the generators) gives canonical coordinates: ``U v`` read
    modulo the diagonal of ``S``.  Coordinates with divisor 1 vanish, those
    with divisor 0 (or beyond the number of generators) are free and the
    rest are torsion, reduced into ``[0, d)``.
    """

    def __init__(self, rank: int, generators: Sequence[Sequence[int]]):
        self.rank = rank
        gens = [tuple(int(x) for x in g) for g in generators if any(g)]
        self.generators = tuple(gens)
        if gens:
            a = Matrix(rank, len(gens), lambda i, j: gens[j][i])
            s, u, _ = smith_normal_decomp(a)
            diag = [abs(int(s[i, i])) for i in range(min(s.shape))]
            self._u = tuple(tuple(int(u[i, j]) for j in range(rank)) for i in range(rank))
        else:
            diag = []
            self._u = identity(rank)
        diag = diag + [0] * (rank - len(diag))
        self.free_rows = tuple(i for i, d in enumerate(diag) if d == 0)
        self.torsion_rows = tuple(i for i, d in enumerate(diag) if d > 1)
        self.torsion_orders = tuple(diag[i] for i in self.torsion_rows)

    @property
    def free_rank(self) -> int:
        return len(self.free_rows)

    def normal_form(self, v: Sequence[int]) -> tuple[IntVec, IntVec]:
        w = matvec(self._u, v)
        free = tuple(w[i] for i in self.free_rows)
        tors = tuple(w[i] % d for i, d in zip(self.torsion_rows, self.torsion_orders))
        return free, tors

    def is_zero(self, v: Sequence[int]) -> bool:
        free, tors = self.normal_form(v)
        return not any(free) and not any(tors)


def solve_rational(columns: Sequence[Sequence], target: Sequence) -> RatVec | None:
    """Solve ``sum c_i columns[i] = target`` exactly over Q.

    The columns must be linearly independent.  Returns ``None`` when the
    target is not in their span.
    """
    k = len(columns)
    if k == 0:
        return () if not any(target) else None
    n = len(target)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            raise ValueError("columns are linearly dependent")
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(rows[i][k] for i in range(k))


@lru_cache(maxsize=None)
def rational_inverse(m: tuple) -> tuple:
    """Inverse of a square integer/rational matrix as nested Fraction tuples."""
    inv = Matrix(m).inv()
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(i)) for i in range(inv.rows))


def matrix_order(m: Sequence[Sequence[int]], limit: int = 1000) -> int:
    n = len(m)
    one = identity(n)
    p = tuple(tuple(r) for r in m)
    for k in range(1, limit + 1):
        if p == one:
            return k
        p = matmul(p, m)
    raise ValueError("matrix has no finite order below the limit")
