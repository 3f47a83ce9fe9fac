"""Seeded random matrices with prescribed double-coset structure.

Every sampler draws from a caller-supplied :class:`random.Random`, so a
whole property suite is reproducible from one seed.  All samples are exact
Laurent polynomial matrices.
"""

from __future__ import annotations

import random
from typing import Sequence

from .field import FiniteField
from .matrix import LaurentMatrix, _offsets, block_diagonal
from .series import Series


def random_series(field: FiniteField, rng: random.Random, lo: int, hi: int, density: float = 0.6) -> Series:
    """Laurent polynomial with exponents in ``[lo, hi]``."""
    terms = {e: rng.randrange(1, field.order) for e in range(lo, hi + 1) if rng.random() < density}
    return Series.from_dict(field, terms)


def _unit(field, rng) -> int:
    return rng.randrange(1, field.order)


def random_unipotent(field: FiniteField, n: int, rng: random.Random, lo: int, hi: int,
                     lower: bool = False, mask=None) -> LaurentMatrix:
    """Unitriangular matrix; ``mask(i, j)`` can switch entries off."""
    one, z = Series.one(field), Series.zero(field)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(one)
            elif (i > j) == lower and (mask is None or mask(i, j)):
                row.append(random_series(field, rng, lo, hi))
            else:
                row.append(z)
        rows.append(row)
    return LaurentMatrix(field, rows)


def random_K(field: FiniteField, n: int, rng: random.Random, depth: int = 2) -> LaurentMatrix:
    """A random element of ``GL_n(o)``: ``P L D U`` with integral factors."""
    perm = list(range(n))
    rng.shuffle(perm)
    p = LaurentMatrix.permutation(field, perm)
    lo = random_unipotent(field, n, rng, 0, depth, lower=True)
    d = LaurentMatrix.diagonal(field, [0] * n, [_unit(field, rng) for _ in range(n)])
    up = random_unipotent(field, n, rng, 0, depth)
    return p * lo * d * up


def random_K_M(field: FiniteField, blocks: Sequence[int], rng: random.Random) -> LaurentMatrix:
    return block_diagonal(field, [random_K(field, b, rng) for b in blocks])


def random_coweight(n: int, rng: random.Random, radius: int = 2) -> tuple[int, ...]:
    return tuple(rng.randint(-radius, radius) for _ in range(n))


def random_dominant(n: int, rng: random.Random, radius: int = 2) -> tuple[int, ...]:
    return tuple(sorted(random_coweight(n, rng, radius), reverse=True))


def random_GL(field: FiniteField, n: int, rng: random.Random, radius: int = 2) -> LaurentMatrix:
    """A random element of ``GL_n(F)``: ``k . lambda(t) . u . v`` with ``u, v`` unipotent."""
    k = random_K(field, n, rng)
    lam = LaurentMatrix.diagonal(field, random_coweight(n, rng, radius))
    u = random_unipotent(field, n, rng, -radius, radius)
    v = random_unipotent(field, n, rng, -1, 1, lower=True)
    return k * lam * u * v


def random_KmuK(field: FiniteField, mu: Sequence[int], rng: random.Random) -> LaurentMatrix:
    n = len(mu)
    return random_K(field, n, rng) * LaurentMatrix.diagonal(field, mu) * random_K(field, n, rng)


def random_M(field: FiniteField, blocks: Sequence[int], rng: random.Random, radius: int = 2) -> LaurentMatrix:
    return block_diagonal(field, [random_GL(field, b, rng, radius) for b in blocks])


def _in_N(blocks: Sequence[int]):
    offs = _offsets(blocks)
    which = {}
    for a in range(len(blocks)):
        for i in range(offs[a], offs[a + 1]):
            which[i] = a
    return lambda i, j: which[i] != which[j]


def random_KM_member(field: FiniteField, blocks: Sequence[int], rng: random.Random) -> LaurentMatrix:
    """``k . m`` with ``k`` in ``K`` and ``m`` in ``M(F)``."""
    return random_K(field, sum(blocks), rng) * random_M(field, blocks, rng)


def random_KM_nonmember(field: FiniteField, blocks: Sequence[int], rng: random.Random) -> LaurentMatrix:
    """``k . n . m`` with ``n`` in ``N(F)`` but not in ``N(o)``; never in ``K . M(F)``.

    If ``n m = k' m'`` then ``n`` lies in ``K . M(F)`` and by uniqueness in
    the Iwasawa decomposition for ``P`` it would be integral.
    """
    n = sum(blocks)
    mask = _in_N(blocks)
    while True:
        u = random_unipotent(field, n, rng, -2, 1, mask=mask)
        if not u.in_K():
            break
    return random_K(field, n, rng) * u * random_M(field, blocks, rng)


def random_levi_hypothesis(field: FiniteField, blocks: Sequence[int], mu: Sequence[int],
                           rng: random.Random) -> LaurentMatrix:
    """``g`` in ``K mu(t) K`` with ``r_B(g) = mu`` in ``X_M``.

    Built as ``k . k_M . mu(t) . k_M' . n`` with ``n`` in ``N(o)``; since
    ``mu`` is dominant, ``mu(t) n mu(t)^{-1}`` stays integral.
    """
    n = sum(blocks)
    nn = random_unipotent(field, n, rng, 0, 2, mask=_in_N(blocks))
    return (random_K(field, n, rng) * random_K_M(field, blocks, rng) * LaurentMatrix.diagonal(field, mu)
            * random_K_M(field, blocks, rng) * nn)


def random_U(field: FiniteField, perm: Sequence[int], rng: random.Random, radius: int = 2) -> LaurentMatrix:
    """Random element of the unipotent radical of the Borel indexed by ``perm``."""
    pos = {c: a for a, c in enumerate(perm)}
    n = len(perm)
    return random_unipotent_masked(field, n, rng, -radius, radius, lambda i, j: pos[i] < pos[j])


def random_unipotent_masked(field: FiniteField, n: int, rng: random.Random, lo: int, hi: int, allowed) -> LaurentMatrix:
    one, z = Series.one(field), Series.zero(field)
    rows = [[one if i == j else (random_series(field, rng, lo, hi) if allowed(i, j) else z) for j in range(n)]
            for i in range(n)]
    return LaurentMatrix(field, rows)
