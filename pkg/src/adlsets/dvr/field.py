"""Finite residue fields ``F_{q^s}`` as small lookup tables.

Elements are integers ``0 .. Q-1`` in the usual base-``p`` polynomial
encoding, so addition is digitwise mod ``p``.  The tables are produced
once with :mod:`galois` and then used with plain list indexing, which is
much faster than per-element array arithmetic for the tiny fields used
here.
"""

from __future__ import annotations

import contextlib
import warnings
from functools import lru_cache


@contextlib.contextmanager
def quiet():
    """Silence the numba threading-layer warnings that galois can trigger."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        yield


def _galois():
    with quiet():
        import galois
    return galois


class FiniteField:
    def __init__(self, q: int, s: int = 1):
        with quiet():
            self._build(q, s)

    def _build(self, q: int, s: int) -> None:
        galois = _galois()
        if not galois.is_prime_power(q):
            raise ValueError(f"q={q} is not a prime power")
        if s < 1:
            raise ValueError("extension degree s must be positive")
        self.q = q
        self.s = s
        self.p = int(galois.factors(q)[0][0])
        self.order = q**s
        gf = galois.GF(self.order)
        self.degree = gf.degree  # F_p-dimension
        els = gf.elements
        self.add = [[int(x) for x in row] for row in (els[:, None] + els[None, :])]
        self.mul = [[int(x) for x in row] for row in (els[:, None] * els[None, :])]
        self.neg = [int(x) for x in -els]
        self.inv = [0] + [int(x) for x in (els[1:] ** -1)]
        self.frob_table = [int(x) for x in els**q]
        self.primitive = int(gf.primitive_element)
        self._gf = gf

    def __repr__(self):
        return f"FiniteField(q={self.q}, s={self.s})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.q, self.s) == (other.q, other.s)

    def __hash__(self):
        return hash((self.q, self.s))

    def from_int(self, c: int) -> int:
        """Image of an integer in the prime subfield."""
        return c % self.p

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        r = 1
        for _ in range(k):
            r = self.mul[r][x]
        return r

    def digits(self, x: int) -> list[int]:
        """Coordinates of ``x`` over ``F_p``."""
        out = []
        for _ in range(self.degree):
            out.append(x % self.p)
            x //= self.p
        return out

    def from_digits(self, ds) -> int:
        x = 0
        for d in reversed(list(ds)):
            x = x * self.p + d
        return x


@lru_cache(maxsize=None)
def get_field(q: int, s: int = 1) -> FiniteField:
    return FiniteField(q, s)
