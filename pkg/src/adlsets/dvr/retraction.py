"""Iwasawa retractions, Cartan invariants and the lemmas relating them.

Borel subgroups of ``GL_n`` containing the diagonal torus are indexed by
permutations ``p`` of ``0..n-1``: the positive roots of ``B_p`` are
``e_{p[a]} - e_{p[b]}`` for ``a < b``.  The identity is the upper
triangular Borel and the reversal its opposite.

``g = k . h`` with ``k`` in ``K = GL_n(o)`` and ``h`` in ``B_p(F)`` is found
by row elimination over ``o``; the retraction is the vector of diagonal
valuations of ``h``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import HypothesisViolated, NotAdjacent, PrecisionExhausted
from .matrix import LaurentMatrix, _offsets, block_diagonal
from .series import GUARD, Series


@dataclass(frozen=True)
class BorelChoice:
    perm: tuple[int, ...]

    @classmethod
    def upper(cls, n: int) -> "BorelChoice":
        return cls(tuple(range(n)))

    @classmethod
    def lower(cls, n: int) -> "BorelChoice":
        return cls(tuple(reversed(range(n))))

    @property
    def n(self) -> int:
        return len(self.perm)

    def opposite(self) -> "BorelChoice":
        return BorelChoice(tuple(reversed(self.perm)))

    def positive_coroot(self, a: int, b: int) -> tuple[int, ...]:
        v = [0] * self.n
        v[self.perm[a]] += 1
        v[self.perm[b]] -= 1
        return tuple(v)

    def leq(self, x: Sequence[int], y: Sequence[int]) -> bool:
        """``x <=^B y``: ``y - x`` is a non-negative sum of ``B``-positive coroots."""
        return _partial_sums_ok([y[i] - x[i] for i in self.perm])


def all_borels(n: int) -> list[BorelChoice]:
    return [BorelChoice(p) for p in itertools.permutations(range(n))]


def _partial_sums_ok(d: Sequence[int]) -> bool:
    acc = 0
    for x in d:
        acc += x
        if acc < 0:
            return False
    return acc == 0


def _certified_pivot(entries: list[tuple[int, Series]]) -> tuple[int, Series]:
    """The entry of least valuation, refusing uncertain comparisons."""
    best = None
    for idx, x in entries:
        if x.coeffs and (best is None or x.start < best[1].start):
            best = (idx, x)
    if best is None:
        raise PrecisionExhausted("no certified pivot: the column is zero to the working precision")
    v = best[1].valuation()
    for _, x in entries:
        if x.prec is not None and x.prec <= v + GUARD:
            raise PrecisionExhausted("pivot valuation is within the guard band of another entry's precision")
    return best


def _split_pivot(piv: Series) -> tuple[int, Series]:
    """``piv = t^v . u`` with ``u`` a unit of ``o``."""
    v = piv.valuation()
    return v, piv.shift(-v)


def iwasawa_form(g: LaurentMatrix, borel: BorelChoice) -> LaurentMatrix:
    """``h`` in ``B(F)`` with ``g`` in ``K . h``.

    Elimination is fraction free: with the pivot ``t^v u`` a row ``r`` is
    replaced by ``u r - (x t^{-v}) r_pivot``, which is a row operation in
    ``K`` because ``u`` is a unit and ``x t^{-v}`` is integral.  Exact
    input therefore stays exact.
    """
    rows = [list(r) for r in g.rows]
    for a, c in enumerate(borel.perm):
        free = borel.perm[a:]
        r, piv = _certified_pivot([(i, rows[i][c]) for i in free])
        target = c
        rows[r], rows[target] = rows[target], rows[r]
        v, u = _split_pivot(piv)
        for i in borel.perm[a + 1:]:
            x = rows[i][c]
            if not x.coeffs and x.prec is None:
                continue
            f = x.shift(-v)
            rows[i] = [u * y - f * z for y, z in zip(rows[i], rows[target])]
            # the pivot column is now zero in this row by construction
            rows[i][c] = Series.zero(g.field)
    return LaurentMatrix(g.field, rows)


def iwasawa_retraction(g: LaurentMatrix, borel: BorelChoice | None = None) -> tuple[int, ...]:
    """``r_B(g)``: the coweight ``mu`` with ``g`` in ``K . mu(t) . U(F)``."""
    borel = borel or BorelChoice.upper(g.n)
    h = iwasawa_form(g, borel)
    return tuple(h[i, i].valuation() for i in range(g.n))


def retraction_by_minors(g: LaurentMatrix, borel: BorelChoice) -> tuple[int, ...]:
    """Independent computation of ``r_B(g)`` from minimal minor valuations.

    Left multiplication by ``K`` preserves the minimum valuation of the
    maximal minors on any set of columns, and for ``mu(t) u`` these minima
    are the partial sums of ``mu`` along the Borel order.
    """
    out = [0] * g.n
    prev = 0
    for j in range(1, g.n + 1):
        s = g.min_minor_valuation(borel.perm[:j])
        out[borel.perm[j - 1]] = s - prev
        prev = s
    return tuple(out)


def smith_valuations(g: LaurentMatrix) -> list[int]:
    """Diagonal valuations of a Smith form, in elimination order (non-decreasing)."""
    n = g.n
    m = [list(r) for r in g.rows]
    out = []
    for k in range(n):
        cells = [((i, j), m[i][j]) for i in range(k, n) for j in range(k, n)]
        (pi, pj), _ = _certified_pivot(cells)
        m[k], m[pi] = m[pi], m[k]
        for row in m:
            row[k], row[pj] = row[pj], row[k]
        v, u = _split_pivot(m[k][k])
        for i in range(k + 1, n):
            x = m[i][k]
            if x.coeffs or x.prec is not None:
                f = x.shift(-v)
                m[i] = [u * y - f * z for y, z in zip(m[i], m[k])]
                m[i][k] = Series.zero(g.field)
        for j in range(k + 1, n):
            x = m[k][j]
            if x.coeffs or x.prec is not None:
                f = x.shift(-v)
                for i in range(k, n):
                    m[i][j] = u * m[i][j] - f * m[i][k]
                m[k][j] = Series.zero(g.field)
        out.append(v)
    return out


def cartan_invariants(g: LaurentMatrix) -> tuple[int, ...]:
    """Elementary divisor exponents of ``g``, sorted decreasingly."""
    return tuple(sorted(smith_valuations(g), reverse=True))


def cartan_by_minors(g: LaurentMatrix) -> tuple[int, ...]:
    """Cartan invariants from determinantal divisors (the test oracle)."""
    d = g.determinantal_divisors()
    e = [d[0]] + [d[k] - d[k - 1] for k in range(1, len(d))]
    return tuple(sorted(e, reverse=True))


def adjacent_position(b1: BorelChoice, b2: BorelChoice) -> int:
    """Position ``a`` with ``b2`` obtained from ``b1`` by swapping ``a, a+1``."""
    if b1.n != b2.n:
        raise NotAdjacent("Borel subgroups of different groups")
    diff = [a for a in range(b1.n) if b1.perm[a] != b2.perm[a]]
    if (len(diff) != 2 or diff[1] != diff[0] + 1
            or b1.perm[diff[0]] != b2.perm[diff[1]] or b1.perm[diff[1]] != b2.perm[diff[0]]):
        raise NotAdjacent(f"{b1.perm} and {b2.perm} are not adjacent")
    return diff[0]


def adjacency_jump(g: LaurentMatrix, b1: BorelChoice, b2: BorelChoice) -> int:
    """The integer ``j`` of the adjacency formula, read off the ``alpha``-component.

    With ``g = k . u_1 . mu(t)`` the ``alpha``-component of ``u_1`` is
    ``h[i][j] / h[j][j]`` for the Iwasawa form ``h``, where
    ``alpha = e_i - e_j``.
    """
    a = adjacent_position(b1, b2)
    i, j = b1.perm[a], b1.perm[a + 1]
    h = iwasawa_form(g, b1)
    vjj = h[j, j].valuation()
    x = h[i, j]
    if not x.coeffs:
        if x.prec is None or x.prec - vjj >= 0:
            return 0
        raise PrecisionExhausted("alpha-component is not certified")
    return max(0, -(x.start - vjj))


def alpha_coroot(b1: BorelChoice, b2: BorelChoice) -> tuple[int, ...]:
    a = adjacent_position(b1, b2)
    return b1.positive_coroot(a, a + 1)


def minimal_gallery(borel: BorelChoice) -> list[BorelChoice]:
    """Bubble-sort gallery from ``B`` to its opposite through adjacent Borels."""
    perm = list(borel.perm)
    out = [BorelChoice(tuple(perm))]
    n = len(perm)
    for k in range(n - 1, 0, -1):
        for a in range(k):
            perm[a], perm[a + 1] = perm[a + 1], perm[a]
            out.append(BorelChoice(tuple(perm)))
    return out


# -- Levi subgroups ------------------------------------------------------------------


def block_sums(v: Sequence[int], blocks: Sequence[int]) -> tuple[int, ...]:
    """Image of a coweight in ``X_M`` for the standard Levi with these block sizes."""
    offs = _offsets(blocks)
    return tuple(sum(v[offs[a]:offs[a + 1]]) for a in range(len(blocks)))


def leq_P(x: Sequence[int], y: Sequence[int], blocks: Sequence[int]) -> bool:
    """``x <=^P y`` in ``X_M`` for the upper parabolic with the given blocks."""
    return _partial_sums_ok([b - a for a, b in zip(block_sums(x, blocks), block_sums(y, blocks))])


def _check_blocks(n: int, blocks: Sequence[int]) -> tuple[int, ...]:
    blocks = tuple(int(b) for b in blocks)
    if sum(blocks) != n or any(b <= 0 for b in blocks):
        raise ValueError(f"block sizes {blocks} do not partition {n}")
    return blocks


def block_diagonal_part(h: LaurentMatrix, blocks: Sequence[int]) -> LaurentMatrix:
    return block_diagonal(h.field, [h.block(blocks, a, a) for a in range(len(blocks))])


@dataclass
class KMRecord:
    by_retractions: bool
    by_witness: bool
    m: LaurentMatrix | None = field(default=None, repr=False)

    def k(self, g: LaurentMatrix) -> LaurentMatrix:
        """The ``K`` factor ``g m^{-1}`` (truncated when ``m`` is not monomial)."""
        return g * self.m.inverse()

    @property
    def agree(self) -> bool:
        return self.by_retractions == self.by_witness


def km_membership(g: LaurentMatrix, blocks: Sequence[int]) -> KMRecord:
    """Decide ``g in K . M(F)`` twice: by retractions and by explicit factorization."""
    blocks = _check_blocks(g.n, blocks)
    images = {block_sums(iwasawa_retraction(g, b), blocks) for b in all_borels(g.n)}
    by_ret = len(images) == 1
    # g = k h with h upper triangular; h = n m with m its block-diagonal part,
    # and g lies in K M(F) exactly when n is integral, i.e. g m^{-1} is in K
    h = iwasawa_form(g, BorelChoice.upper(g.n))
    m = block_diagonal_part(h, blocks)
    if quotient_in_K(g, m):
        return KMRecord(by_ret, True, m=m)
    return KMRecord(by_ret, False)


def quotient_in_K(g: LaurentMatrix, m: LaurentMatrix) -> bool:
    """Exact test of ``g m^{-1} in K`` through the adjugate of ``m``."""
    dv = m.det_valuation
    if g.det_valuation != dv:
        return False
    return all(x.val_at_least(dv) for r in (g * m.adjugate()).rows for x in r)


@dataclass
class HNWitnessReport:
    mu: tuple[int, ...]
    blocks: tuple[int, ...]
    retraction: tuple[int, ...]
    hypothesis: bool
    r61: bool
    r71: bool
    sandwich: bool
    factorized: bool | None = None
    m_cartan: tuple[int, ...] | None = None
    m_cartan_ok: bool | None = None

    @property
    def skipped(self) -> bool:
        return not self.hypothesis

    @property
    def passed(self) -> bool:
        ok = self.r61 and self.r71 and self.sandwich
        if self.hypothesis:
            ok = ok and bool(self.factorized) and bool(self.m_cartan_ok)
        return ok


def hn_witness_check(g: LaurentMatrix, blocks: Sequence[int], mu: Sequence[int]) -> HNWitnessReport:
    """Check the Bruhat-Tits inequalities and, under its hypothesis, the Levi factorization.

    ``mu`` must be dominant for the upper Borel and ``g`` must lie in
    ``K mu(t) K``; otherwise :class:`HypothesisViolated` is raised.
    """
    blocks = _check_blocks(g.n, blocks)
    mu = tuple(int(x) for x in mu)
    if list(mu) != sorted(mu, reverse=True):
        raise HypothesisViolated(f"{mu} is not dominant for the upper Borel")
    if cartan_invariants(g) != mu:
        raise HypothesisViolated("g is not in K mu(t) K")
    upper = BorelChoice.upper(g.n)
    rb = iwasawa_retraction(g, upper)
    rets = {b.perm: iwasawa_retraction(g, b) for b in all_borels(g.n)}
    r61 = all(upper.leq(r, mu) for r in rets.values())
    r71 = all(leq_P(r, mu, blocks) for r in rets.values())
    sandwich = all(upper.leq(rb, r) and upper.leq(r, mu) for r in rets.values())
    hyp = block_sums(rb, blocks) == block_sums(mu, blocks)
    rep = HNWitnessReport(mu, blocks, rb, hyp, r61, r71, sandwich)
    if not hyp:
        return rep
    km = km_membership(g, blocks)
    rep.factorized = km.by_witness
    if km.by_witness:
        offs = _offsets(blocks)
        inv = []
        for a in range(len(blocks)):
            inv.extend(cartan_invariants(km.m.block(blocks, a, a)))
        rep.m_cartan = tuple(inv)
        rep.m_cartan_ok = all(
            tuple(inv[offs[a]:offs[a + 1]]) == mu[offs[a]:offs[a + 1]] for a in range(len(blocks))
        )
    return rep


def in_K_A(g: LaurentMatrix) -> bool:
    """Constructive test of ``g in K . A(F)``."""
    return km_membership(g, [1] * g.n).by_witness


def telescoped_difference(g: LaurentMatrix, borel: BorelChoice) -> tuple[int, ...]:
    """Sum of ``j . alpha^vee`` along the bubble-sort gallery from ``B`` to its opposite."""
    total = [0] * g.n
    gal = minimal_gallery(borel)
    for b1, b2 in zip(gal, gal[1:]):
        j = adjacency_jump(g, b1, b2)
        total = [t + j * c for t, c in zip(total, alpha_coroot(b1, b2))]
    return tuple(total)
