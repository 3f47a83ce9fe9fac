"""Frobenius twists, coinvariant lattices ``Y_M`` and the orders on them.

A twist is given by a permutation of the simple roots preserving the
Cartan matrix.  Its action on ``X_*(T)`` is the lattice automorphism that
sends ``alpha_i^vee`` to ``alpha_{sigma(i)}^vee`` and is compatible with
the roots.  For ``sc`` and ``ad`` data this permutes the basis; for
``gl`` data the only nontrivial diagram automorphism is the flip, realized
as ``v -> -reverse(v)`` (the quasi-split unitary group), which acts by
``-1`` on the central direction.

All real-vector computations use :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import LeviMismatch, LeviNotSigmaStable, NotAnAutomorphism, NotDominant
from .linalg import QuotientLattice, dot, identity, matmul, matrix_order, matvec, solve_rational, vsub
from .root_datum import (
    Coweight,
    LeviDatum,
    RootDatum,
    XMClass,
    check_same_levi,
    coroot_coefficients,
    levi,
    rational_coroot_coefficients,
)

RealPoint = tuple[Fraction, ...]


@dataclass(frozen=True)
class SigmaAction:
    datum: RootDatum = field(repr=False)
    perm: tuple[int, ...]
    matrix: tuple = field(repr=False, compare=False)
    order: int = field(compare=False)

    @property
    def is_split(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def apply(self, v: Sequence) -> tuple:
        return matvec(self.matrix, v)

    def orbits(self, subset: Iterable[int]) -> list[tuple[int, ...]]:
        """Orbits of the permutation on ``subset`` (assumed stable)."""
        left = sorted(subset)
        out = []
        while left:
            i = left[0]
            orb = []
            j = i
            while j not in orb:
                orb.append(j)
                j = self.perm[j]
            out.append(tuple(sorted(orb)))
            left = [k for k in left if k not in orb]
        return out

    def to_json(self) -> list[int]:
        return list(self.perm)


def _lattice_matrix(datum: RootDatum, perm: tuple[int, ...]) -> tuple:
    n = datum.rank_X
    if all(i == p for i, p in enumerate(perm)):
        return identity(n)
    if datum.isogeny in ("sc", "ad"):
        # basis vector i goes to basis vector perm[i]
        return tuple(tuple(int(perm[c] == r) for c in range(n)) for r in range(n))
    # gl: the diagram flip
    return tuple(tuple(-int(c == n - 1 - r) for c in range(n)) for r in range(n))


def validate_sigma(datum: RootDatum, perm: Sequence[int] | None = None) -> SigmaAction:
    """Check that ``perm`` is a diagram automorphism and build its lattice action."""
    r = datum.semisimple_rank
    perm = tuple(range(r)) if perm is None else tuple(int(p) for p in perm)
    if sorted(perm) != list(range(r)):
        raise NotAnAutomorphism(f"{perm} is not a permutation of {r} simple indices")
    c = datum.cartan
    for i in range(r):
        for j in range(r):
            if c[perm[i]][perm[j]] != c[i][j]:
                raise NotAnAutomorphism(f"{perm} does not preserve the Cartan matrix")
    m = _lattice_matrix(datum, perm)
    for i in range(r):
        if matvec(m, datum.simple_coroots[i]) != datum.simple_coroots[perm[i]]:
            raise NotAnAutomorphism(f"no lattice automorphism realizes {perm}")
        # alpha_{sigma i} o sigma = alpha_i
        row = tuple(dot(datum.simple_roots[perm[i]], col) for col in zip(*m))
        if row != datum.simple_roots[i]:
            raise NotAnAutomorphism(f"no lattice automorphism realizes {perm}")
    return SigmaAction(datum, perm, m, matrix_order(m))


def is_sigma_stable(lv: LeviDatum, sigma: SigmaAction) -> bool:
    return {sigma.perm[i] for i in lv.levi_simple} == set(lv.levi_simple)


def require_sigma_stable(lv: LeviDatum, sigma: SigmaAction) -> None:
    if not is_sigma_stable(lv, sigma):
        raise LeviNotSigmaStable(f"Levi {lv.levi_simple} is not stable under {sigma.perm}")


def sigma_stable_levis(datum: RootDatum, sigma: SigmaAction) -> list[LeviDatum]:
    r = datum.semisimple_rank
    out = []
    for mask in range(1 << r):
        sub = tuple(i for i in range(r) if mask >> i & 1)
        lv = levi(datum, sub)
        if is_sigma_stable(lv, sigma):
            out.append(lv)
    return out


# -- Y_M ------------------------------------------------------------------------


@lru_cache(maxsize=None)
def ym_lattice(datum: RootDatum, subset: tuple[int, ...], perm: tuple[int, ...]) -> QuotientLattice:
    sigma = validate_sigma(datum, perm)
    n = datum.rank_X
    gens = [datum.simple_coroots[i] for i in subset]
    for k in range(n):
        e = tuple(int(j == k) for j in range(n))
        gens.append(vsub(e, sigma.apply(e)))
    return QuotientLattice(n, gens)


@dataclass(frozen=True)
class YMClass:
    levi_simple: tuple[int, ...]
    perm: tuple[int, ...]
    normal_form: tuple
    rep: Coweight = field(compare=False)


def to_YM(lv: LeviDatum, sigma: SigmaAction, c: XMClass | Sequence[int]) -> YMClass:
    """Image in ``Y_M`` of an ``X_M`` class (or of a coweight)."""
    require_sigma_stable(lv, sigma)
    if isinstance(c, XMClass):
        check_same_levi(lv, c)
        rep = c.rep
    else:
        rep = tuple(int(x) for x in c)
    lat = ym_lattice(lv.parent, lv.levi_simple, sigma.perm)
    return YMClass(lv.levi_simple, sigma.perm, lat.normal_form(rep), rep)


def to_YG(datum: RootDatum, sigma: SigmaAction, v: Sequence[int]) -> tuple:
    """Normal form of the image of a coweight in ``Y_G``."""
    return ym_lattice(datum, datum.indices, sigma.perm).normal_form(tuple(v))


def _check_ym(lv: LeviDatum, sigma: SigmaAction, *ys: YMClass) -> None:
    for y in ys:
        if y.levi_simple != lv.levi_simple or y.perm != sigma.perm:
            raise LeviMismatch("Y_M class belongs to a different (Levi, sigma)")


# -- real projections -------------------------------------------------------------


def flat(sigma: SigmaAction, x: Sequence) -> RealPoint:
    """Average of ``x`` over its orbit under ``sigma`` (the projection onto ``a``)."""
    acc = [Fraction(v) for v in x]
    cur = tuple(x)
    for _ in range(sigma.order - 1):
        cur = sigma.apply(cur)
        for k, v in enumerate(cur):
            acc[k] += v
    return tuple(a / sigma.order for a in acc)


@lru_cache(maxsize=None)
def relative_weyl_group(datum: RootDatum, subset: tuple[int, ...], perm: tuple[int, ...]) -> tuple:
    """``W_{M(F)}``: the elements of ``W_M`` commuting with ``sigma``."""
    sigma = validate_sigma(datum, perm)
    s = sigma.matrix
    return tuple(w for w in datum.weyl_group(subset) if matmul(w, s) == matmul(s, w))


def pr_M(lv: LeviDatum, sigma: SigmaAction, a: Sequence) -> RealPoint:
    """Average a ``sigma``-fixed vector over the relative Weyl group of ``M``."""
    require_sigma_stable(lv, sigma)
    group = relative_weyl_group(lv.parent, lv.levi_simple, sigma.perm)
    acc = [Fraction(0)] * len(a)
    for w in group:
        for k, v in enumerate(matvec(w, a)):
            acc[k] += v
    return tuple(x / len(group) for x in acc)


def abar(lv: LeviDatum, sigma: SigmaAction, x: Sequence) -> RealPoint:
    """Image of a coweight (or a ``Y_M`` representative) in ``a_P``."""
    return pr_M(lv, sigma, flat(sigma, x))


def real_leq(datum: RootDatum, x: Sequence, y: Sequence) -> bool:
    """``x <= y``: ``y - x`` is a non-negative real combination of simple coroots."""
    c = rational_coroot_coefficients(datum, vsub(y, x))
    return c is not None and all(v >= 0 for v in c)


# -- orders ---------------------------------------------------------------------


def leq_P(lv: LeviDatum, a: XMClass, b: XMClass) -> bool:
    """``a <=^P b`` in ``X_M``."""
    check_same_levi(lv, a, b)
    coeffs = coroot_coefficients(lv.parent, vsub(b.rep, a.rep))
    if coeffs is None:
        return False
    return all(coeffs[i] >= 0 for i in lv.complement_simple)


def ym_orbit_coefficients(lv: LeviDatum, sigma: SigmaAction, d: Sequence[int]):
    """Coefficients of the ``Y_M`` class of ``d`` in the orbit basis of ``Y_M^G``.

    Returns ``None`` when ``d`` does not map to zero in ``Y_G`` (the class
    then lies outside the image of ``Y_M^G``).  Otherwise returns a dict
    from orbit (tuple of simple indices) to integer coefficient.
    """
    datum = lv.parent
    if any(any(part) for part in to_YG(datum, sigma, d)):
        return None
    orbits = sigma.orbits(lv.complement_simple)
    if not orbits:
        return {}
    cols = [abar(lv, sigma, datum.simple_coroots[o[0]]) for o in orbits]
    sol = solve_rational(cols, abar(lv, sigma, d))
    if sol is None or any(c.denominator != 1 for c in sol):
        raise AssertionError("class with trivial Y_G image is not in the orbit lattice")
    coeffs = {o: int(c) for o, c in zip(orbits, sol)}
    # the reconstruction must agree in Y_M, torsion included
    rest = list(d)
    for o, c in coeffs.items():
        rest = [x - c * y for x, y in zip(rest, datum.simple_coroots[o[0]])]
    lat = ym_lattice(datum, lv.levi_simple, sigma.perm)
    if not lat.is_zero(rest):
        raise AssertionError("orbit-basis reconstruction failed in Y_M")
    return coeffs


def leq_P_YM(lv: LeviDatum, sigma: SigmaAction, a: YMClass, b: YMClass) -> bool:
    """``a`` precedes ``b`` in the order on ``Y_M``."""
    require_sigma_stable(lv, sigma)
    _check_ym(lv, sigma, a, b)
    coeffs = ym_orbit_coefficients(lv, sigma, vsub(b.rep, a.rep))
    return coeffs is not None and all(c >= 0 for c in coeffs.values())


@lru_cache(maxsize=None)
def roots_in_N(datum: RootDatum, subset: tuple[int, ...]) -> tuple:
    """Positive roots with a nonzero coefficient outside ``subset``."""
    out = []
    for (b, _), r in zip(datum.positive_root_pairs, datum.positive_roots):
        if any(b[i] for i in datum.indices if i not in subset):
            out.append(r)
    return tuple(out)


def in_YM_plus(lv: LeviDatum, sigma: SigmaAction, y: YMClass) -> bool:
    require_sigma_stable(lv, sigma)
    _check_ym(lv, sigma, y)
    ybar = abar(lv, sigma, y.rep)
    return all(dot(r, ybar) > 0 for r in roots_in_N(lv.parent, lv.levi_simple))


def dominant_real(datum: RootDatum, x: Sequence) -> bool:
    return all(dot(a, x) >= 0 for a in datum.simple_roots)


@dataclass(frozen=True)
class ReformReport:
    cond1: bool
    cond2: bool
    cond_dom: bool

    @property
    def agree(self) -> bool:
        return self.cond1 == self.cond2 == self.cond_dom


def reform_equiv_report(lv: LeviDatum, sigma: SigmaAction, mu: Sequence[int], nu: YMClass) -> ReformReport:
    """Evaluate both formulations of the Mazur order, plus the ``pr_M`` variant.

    ``cond1`` is the coinvariant order, ``cond2`` asks for equal ``Y_G``
    images and ``nu_bar <= mu_flat`` in the real order, ``cond_dom`` the
    same with ``pr_M(mu_flat)`` on the right.
    """
    datum = lv.parent
    if not datum.is_dominant(mu):
        raise NotDominant(f"{tuple(mu)} is not dominant")
    mu_y = to_YM(lv, sigma, mu)
    cond1 = leq_P_YM(lv, sigma, nu, mu_y)
    same_yg = to_YG(datum, sigma, mu) == to_YG(datum, sigma, nu.rep)
    nubar = abar(lv, sigma, nu.rep)
    muflat = flat(sigma, mu)
    cond2 = same_yg and real_leq(datum, nubar, muflat)
    cond_dom = same_yg and real_leq(datum, nubar, pr_M(lv, sigma, muflat))
    return ReformReport(cond1, cond2, cond_dom)
