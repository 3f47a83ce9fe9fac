"""Truncated Laurent series over a finite field.

A :class:`Series` is known modulo ``t^prec``; ``prec=None`` marks an exact
Laurent polynomial.  Products and sums follow the usual absolute
precision rules, and inverting a non-monomial unit produces ``N`` digits
of relative precision (``DEFAULT_PRECISION``).

Valuations are only reported when they are certified: a valuation that
falls within ``GUARD`` digits of the truncation boundary raises
:class:`~adlsets.errors.PrecisionExhausted`.
"""

from __future__ import annotations

import math
import re
from typing import Iterable

from ..errors import PrecisionExhausted
from .field import FiniteField

DEFAULT_PRECISION = 16
GUARD = 2


def set_default_precision(n: int) -> None:
    """Relative precision used when inverting units."""
    global DEFAULT_PRECISION
    if n < GUARD + 2:
        raise ValueError(f"precision must be at least {GUARD + 2}")
    DEFAULT_PRECISION = int(n)


def _minp(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Series:
    __slots__ = ("field", "start", "coeffs", "prec")

    def __init__(self, field: FiniteField, start: int, coeffs: Iterable[int], prec: int | None = None):
        cs = list(coeffs)
        if prec is not None:
            keep = max(0, prec - start)
            del cs[keep:]
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        if i:
            cs = cs[i:]
            start += i
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            start = 0 if prec is None else prec
        self.field = field
        self.start = start
        self.coeffs = tuple(cs)
        self.prec = prec

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field, prec=None):
        return cls(field, 0, (), prec)

    @classmethod
    def one(cls, field):
        return cls(field, 0, (1,))

    @classmethod
    def monomial(cls, field, exp: int, c: int = 1):
        return cls(field, exp, (c,))

    @classmethod
    def from_dict(cls, field, terms: dict, prec=None):
        if not terms:
            return cls.zero(field, prec)
        lo, hi = min(terms), max(terms)
        cs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            cs[e - lo] = field.add[cs[e - lo]][c]
        return cls(field, lo, cs, prec)

    # -- queries -----------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.prec is None

    @property
    def known_zero(self) -> bool:
        """No nonzero digit is known (an exact zero or pure noise)."""
        return not self.coeffs

    def is_zero(self) -> bool:
        if self.coeffs:
            return False
        if self.prec is None:
            return True
        raise PrecisionExhausted("cannot certify that a truncated series vanishes")

    def valuation(self, guard: int = GUARD) -> float | int:
        if not self.coeffs:
            if self.prec is None:
                return math.inf
            raise PrecisionExhausted(f"valuation is at least {self.prec} but no digit is known")
        if self.prec is not None and self.start + guard >= self.prec:
            raise PrecisionExhausted(
                f"valuation {self.start} is within {guard} digits of the precision {self.prec}"
            )
        return self.start

    def val_at_least(self, k: int) -> bool:
        """Certified test of ``val >= k``."""
        if self.coeffs and self.start < k:
            return False
        if self.prec is None or self.prec >= k:
            return True
        raise PrecisionExhausted(f"cannot decide val >= {k} at precision {self.prec}")

    def coeff(self, e: int) -> int:
        if self.prec is not None and e >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{e} is beyond the precision {self.prec}")
        k = e - self.start
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def terms(self) -> dict:
        return {self.start + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def top(self) -> int:
        """One past the largest exponent with a known nonzero digit."""
        return self.start + len(self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def _combine(self, other, sign_other: bool):
        f = self.field
        if not isinstance(other, Series):
            other = Series(f, 0, (f.from_int(other),))
        prec = _minp(self.prec, other.prec)
        if not other.coeffs:
            return Series(f, self.start, self.coeffs, prec)
        if not self.coeffs:
            cs = other.coeffs if not sign_other else [f.neg[c] for c in other.coeffs]
            return Series(f, other.start, cs, prec)
        lo = min(self.start, other.start)
        hi = max(self.top, other.top)
        cs = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            cs[self.start - lo + i] = c
        add = f.add
        neg = f.neg
        for i, c in enumerate(other.coeffs):
            j = other.start - lo + i
            cs[j] = add[cs[j]][neg[c] if sign_other else c]
        return Series(f, lo, cs, prec)

    def __add__(self, other):
        return self._combine(other, False)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, True)

    def __rsub__(self, other):
        return (-self)._combine(other, False)

    def __neg__(self):
        return Series(self.field, self.start, [self.field.neg[c] for c in self.coeffs], self.prec)

    def __mul__(self, other):
        f = self.field
        if not isinstance(other, Series):
            other = Series(f, 0, (f.from_int(other),))
        a, b = self, other
        if (a.prec is None and b.prec is None) or (not a.coeffs and a.prec is None) \
                or (not b.coeffs and b.prec is None):
            prec = None
        else:
            va = a.start if a.coeffs else a.prec
            vb = b.start if b.coeffs else b.prec
            pa = math.inf if a.prec is None else a.prec
            pb = math.inf if b.prec is None else b.prec
            prec = min(va + pb, vb + pa)
            prec = None if prec == math.inf else int(prec)
        if not a.coeffs or not b.coeffs:
            return Series(f, 0, (), prec)
        mul, add = f.mul, f.add
        cs = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                row = mul[x]
                for j, y in enumerate(b.coeffs):
                    if y:
                        cs[i + j] = add[cs[i + j]][row[y]]
        return Series(f, a.start + b.start, cs, prec)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Series":
        """Multiply by ``t^k``."""
        return Series(self.field, self.start + k, self.coeffs, None if self.prec is None else self.prec + k)

    def frob(self) -> "Series":
        """Apply the Frobenius of the residue field to every digit."""
        fr = self.field.frob_table
        return Series(self.field, self.start, [fr[c] for c in self.coeffs], self.prec)

    def inverse(self, rel_prec: int | None = None) -> "Series":
        rel_prec = rel_prec or DEFAULT_PRECISION
        v = self.valuation()
        f = self.field
        u = self.coeffs
        if self.prec is None and len(u) == 1:
            return Series(f, -v, (f.inv[u[0]],))
        known = len(u) if self.prec is None else self.prec - v
        n = min(rel_prec, known) if self.prec is not None else rel_prec
        inv0 = f.inv[u[0]]
        mul, add, neg = f.mul, f.add, f.neg
        out = [inv0]
        for k in range(1, n):
            acc = 0
            for i in range(1, min(k, len(u) - 1) + 1):
                acc = add[acc][mul[u[i]][out[k - i]]]
            out.append(mul[neg[acc]][inv0])
        return Series(f, -v, out, -v + n)

    def __truediv__(self, other):
        return self * other.inverse()

    def truncate(self, prec: int) -> "Series":
        return Series(self.field, self.start, self.coeffs, _minp(self.prec, prec))

    # -- comparison / display --------------------------------------------

    def key(self) -> tuple:
        return (self.start, self.coeffs, self.prec)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def agrees_with(self, other: "Series") -> bool:
        """Equality up to the common precision."""
        d = self - other
        return not d.coeffs

    def __repr__(self):
        return f"Series({format_series(self)})"


def format_series(x: Series) -> str:
    parts = []
    for e, c in sorted(x.terms().items()):
        mono = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
        if c == 1:
            parts.append(mono)
        elif e == 0:
            parts.append(str(c))
        else:
            parts.append(f"{c}*{mono}")
    s = " + ".join(parts) if parts else "0"
    if x.prec is not None:
        s += f" + O(t^{x.prec})"
    return s


_TERM = re.compile(
    r"^(?:(?P<coef>-?\d+|g(?:\^(?P<gexp>-?\d+))?)\s*\*?\s*)?(?P<t>t(?:\^\(?(?P<exp>-?\d+)\)?)?)?$"
)


def parse_series(text: str, field: FiniteField) -> Series:
    """Parse literals like ``"t^-1 + 2*t^3"``.

    Integer coefficients are reduced into the prime field; ``g`` and
    ``g^k`` denote powers of the primitive element of the residue field.
    A trailing ``O(t^k)`` sets the precision.
    """
    text = text.replace(" ", "")
    prec = None
    m = re.search(r"\+?O\(t\^\(?(-?\d+)\)?\)$", text)
    if m:
        prec = int(m.group(1))
        text = text[: m.start()]
    if not text:
        return Series.zero(field, prec)
    terms: dict[int, int] = {}
    for raw in re.split(r"(?<![\^(])(?=[+-])", text):
        if not raw:
            continue
        sign = 1
        body = raw
        if body[0] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        tm = _TERM.match(body)
        if not tm or not body:
            raise ValueError(f"cannot parse term {raw!r}")
        coef = tm.group("coef")
        if coef is None:
            c = 1
        elif coef.startswith("g"):
            c = field.power(field.primitive, int(tm.group("gexp") or 1))
        else:
            c = field.from_int(int(coef))
        if sign < 0:
            c = field.neg[c]
        if tm.group("t"):
            e = int(tm.group("exp")) if tm.group("exp") is not None else 1
        else:
            if coef is None:
                raise ValueError(f"cannot parse term {raw!r}")
            e = 0
        terms[e] = field.add[terms.get(e, 0)][c]
    return Series.from_dict(field, terms, prec)
