"""Square matrices over ``F_{q^s}((t))`` and exact determinantal data."""

from __future__ import annotations

import itertools
import math
from functools import cached_property
from typing import Sequence

from ..errors import PrecisionExhausted
from .field import FiniteField
from .series import GUARD, Series, format_series, parse_series


class LaurentMatrix:
    __slots__ = ("field", "n", "rows", "__dict__")

    def __init__(self, field: FiniteField, rows: Sequence[Sequence[Series]]):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, field, n):
        return cls.diagonal(field, [0] * n)

    @classmethod
    def diagonal(cls, field, exps: Sequence[int], units: Sequence[int] | None = None):
        n = len(exps)
        units = units or [1] * n
        z = Series.zero(field)
        return cls(field, [[Series.monomial(field, exps[i], units[i]) if i == j else z for j in range(n)]
                           for i in range(n)])

    @classmethod
    def permutation(cls, field, perm: Sequence[int]):
        """Matrix sending ``e_j`` to ``e_{perm[j]}``."""
        n = len(perm)
        one, z = Series.one(field), Series.zero(field)
        return cls(field, [[one if perm[j] == i else z for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, field, rows: Sequence[Sequence[str]]):
        return cls(field, [[parse_series(str(x), field) for x in r] for r in rows])

    # -- basic structure ---------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = Series.zero(self.field)
                for x, y in zip(r, c):
                    if (x.coeffs and y.coeffs) or x.prec is not None or y.prec is not None:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return LaurentMatrix(self.field, out)

    def frob(self) -> "LaurentMatrix":
        return LaurentMatrix(self.field, [[x.frob() for x in r] for r in self.rows])

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(self.field, list(zip(*self.rows)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "LaurentMatrix":
        return LaurentMatrix(self.field, [[self.rows[i][j] for j in cols] for i in rows])

    def block(self, sizes: Sequence[int], a: int, b: int) -> "LaurentMatrix":
        offs = _offsets(sizes)
        return self.submatrix(range(offs[a], offs[a + 1]), range(offs[b], offs[b + 1]))

    @property
    def exact(self) -> bool:
        return all(x.prec is None for r in self.rows for x in r)

    def valuations(self) -> list[list]:
        return [[x.valuation() for x in r] for r in self.rows]

    def min_valuation(self):
        """Smallest entry valuation (``inf`` for the zero matrix)."""
        return _certified_min([x for r in self.rows for x in r])

    # -- determinants and minors -------------------------------------------

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Series:
        return _det([[self.rows[i][j] for j in cols] for i in rows], self.field)

    @cached_property
    def det(self) -> Series:
        return self.minor(range(self.n), range(self.n))

    @cached_property
    def det_valuation(self):
        return self.det.valuation()

    def is_invertible(self) -> bool:
        return not self.det.is_zero()

    def min_minor_valuation(self, cols: Sequence[int]):
        """Minimum valuation of the maximal minors in the given columns."""
        k = len(cols)
        vals = [self.minor(r, cols) for r in itertools.combinations(range(self.n), k)]
        return _certified_min(vals)

    def determinantal_divisors(self) -> list:
        """``d_k`` = minimum valuation of all ``k x k`` minors, ``k = 1..n``."""
        out = []
        for k in range(1, self.n + 1):
            vals = [self.minor(r, c) for r in itertools.combinations(range(self.n), k)
                    for c in itertools.combinations(range(self.n), k)]
            out.append(_certified_min(vals))
        return out

    def in_K(self) -> bool:
        """Whether the matrix lies in ``GL_n(o)``."""
        for r in self.rows:
            for x in r:
                if not x.val_at_least(0):
                    return False
        return self.det_valuation == 0

    def adjugate(self) -> "LaurentMatrix":
        n = self.n
        if n == 1:
            return LaurentMatrix(self.field, [[Series.one(self.field)]])
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                c = self.minor([r for r in range(n) if r != j], [c for c in range(n) if c != i])
                out[i][j] = -c if (i + j) % 2 else c
        return LaurentMatrix(self.field, out)

    def inverse(self) -> "LaurentMatrix":
        """Adjugate over determinant; exact when the determinant is a monomial."""
        d_inv = self.det.inverse()
        return LaurentMatrix(self.field, [[x * d_inv for x in r] for r in self.adjugate().rows])

    # -- display -------------------------------------------------------------

    def to_strings(self) -> list[list[str]]:
        return [[format_series(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"LaurentMatrix({self.to_strings()})"


def _offsets(sizes: Sequence[int]) -> list[int]:
    out = [0]
    for s in sizes:
        out.append(out[-1] + s)
    return out


def block_diagonal(field: FiniteField, blocks: Sequence[LaurentMatrix]) -> LaurentMatrix:
    n = sum(b.n for b in blocks)
    z = Series.zero(field)
    rows = [[z] * n for _ in range(n)]
    o = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[o + i][o + j] = b.rows[i][j]
        o += b.n
    return LaurentMatrix(field, rows)


def _det(m: list[list[Series]], field: FiniteField) -> Series:
    n = len(m)
    if n == 0:
        return Series.one(field)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    acc = Series.zero(field)
    for j in range(n):
        if not m[0][j].coeffs and m[0][j].prec is None:
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(sub, field)
        acc = acc - term if j % 2 else acc + term
    return acc


def _certified_min(vals: Sequence[Series]):
    best = math.inf
    for v in vals:
        if v.coeffs:
            best = min(best, v.start)
    for v in vals:
        if v.prec is not None and v.prec <= best + GUARD:
            raise PrecisionExhausted("minimum minor valuation is too close to the truncation")
    return best
