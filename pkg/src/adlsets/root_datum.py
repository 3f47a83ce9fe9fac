"""Based root data of split reductive groups and their standard Levis.

Coordinates follow Bourbaki numbering.  Three isogeny flavors are built:

* ``"sc"``: the cocharacter lattice is the coroot lattice; the simple
  coroots are the standard basis vectors.
* ``"ad"``: the cocharacter lattice is the coweight lattice; the basis is
  the fundamental coweights, so simple roots are the standard dual basis.
* ``"gl"``: ``GL_n`` in its usual diagonal coordinates, ``alpha_i^vee =
  e_i - e_{i+1}``.  Type ``("A", n, "gl")`` is ``GL_{n+1}``.

Characters are integer row vectors and the pairing is the dot product.
Cartan matrices use the convention ``C[i][j] = <alpha_i, alpha_j^vee>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import LeviMismatch, NotDominant, RootDatumError
from .linalg import (
    IntVec,
    QuotientLattice,
    dot,
    identity,
    matmul,
    rational_inverse,
    solve_rational,
    vsub,
)

Coweight = IntVec

_RANK_RANGES = {
    "A": (1, 8),
    "B": (2, 8),
    "C": (2, 8),
    "D": (4, 8),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
    "GL": (1, 9),
}


def cartan_matrix(kind: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix ``C[i][j] = <alpha_i, alpha_j^vee>`` in Bourbaki numbering."""
    n = rank
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2

    def link(i, j, a=-1, b=-1):
        c[i][j] = a
        c[j][i] = b

    if kind == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif kind == "B":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
    elif kind == "C":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
    elif kind == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif kind == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif kind == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif kind == "G":
        link(0, 1, -1, -3)
    else:
        raise RootDatumError(f"unknown Cartan type {kind!r}")
    return tuple(tuple(r) for r in c)


def _parse_type(tag: str, rank: int | None) -> tuple[str, int]:
    tag = tag.strip().upper()
    if tag.startswith("GL"):
        kind, rest = "GL", tag[2:]
    else:
        kind, rest = tag[:1], tag[1:]
    if rest:
        r = int(rest)
        if rank is not None and rank != r:
            raise RootDatumError(f"type tag {tag!r} disagrees with rank {rank}")
        rank = r
    if kind not in _RANK_RANGES:
        raise RootDatumError(f"unknown Cartan type {tag!r}")
    if rank is None:
        raise RootDatumError("rank is required")
    lo, hi = _RANK_RANGES[kind]
    if not lo <= rank <= hi:
        raise RootDatumError(f"rank {rank} out of range [{lo}, {hi}] for type {kind}")
    return kind, rank


@dataclass(frozen=True)
class RootDatum:
    """A based root datum with integer coordinates.

    ``simple_roots`` live in the character lattice, ``simple_coroots`` in
    the cocharacter lattice ``X_*(T) = Z^rank_X``.
    """

    kind: str
    semisimple_rank: int
    isogeny: str
    rank_X: int
    simple_roots: tuple[IntVec, ...]
    simple_coroots: tuple[IntVec, ...]
    cartan: tuple[IntVec, ...] = field(repr=False)

    # -- basic structure -------------------------------------------------

    @property
    def cartan_type(self) -> str:
        if self.isogeny == "gl":
            return f"GL{self.rank_X}"
        return f"{self.kind}{self.semisimple_rank}"

    @property
    def key(self) -> tuple:
        return (self.kind, self.semisimple_rank, self.isogeny)

    def to_json(self) -> dict:
        if self.isogeny == "gl":
            return {"type": "GL", "rank": self.rank_X, "isogeny": "gl"}
        return {"type": self.kind, "rank": self.semisimple_rank, "isogeny": self.isogeny}

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(range(self.semisimple_rank))

    def pairing(self, root: Sequence, coweight: Sequence):
        return dot(root, coweight)

    def reflect(self, i: int, v: Sequence) -> tuple:
        a = dot(self.simple_roots[i], v)
        if a == 0:
            return tuple(v)
        return tuple(x - a * y for x, y in zip(v, self.simple_coroots[i]))

    def apply_word(self, word: Iterable[int], v: Sequence) -> tuple:
        """Apply simple reflections in the order they appear in ``word``."""
        v = tuple(v)
        for i in word:
            v = self.reflect(i, v)
        return v

    def is_dominant(self, v: Sequence) -> bool:
        return all(dot(a, v) >= 0 for a in self.simple_roots)

    def reflection_matrix(self, i: int) -> tuple:
        a, c = self.simple_roots[i], self.simple_coroots[i]
        n = self.rank_X
        return tuple(tuple(int(r == s) - c[r] * a[s] for s in range(n)) for r in range(n))

    def word_matrix(self, word: Sequence[int]) -> tuple:
        """Matrix of ``s_{w[0]} s_{w[1]} ...`` acting on column vectors."""
        m = identity(self.rank_X)
        for i in word:
            m = matmul(m, self.reflection_matrix(i))
        return m

    # -- positive roots -------------------------------------------------

    @cached_property
    def positive_root_pairs(self) -> tuple[tuple[IntVec, IntVec], ...]:
        """Pairs (root coefficients, coroot coefficients) over the simple ones."""
        return _positive_system(self.cartan, self.indices)

    @cached_property
    def positive_roots(self) -> tuple[IntVec, ...]:
        return tuple(self._combine(self.simple_roots, b) for b, _ in self.positive_root_pairs)

    @cached_property
    def positive_coroots(self) -> tuple[IntVec, ...]:
        return tuple(self._combine(self.simple_coroots, c) for _, c in self.positive_root_pairs)

    def _combine(self, basis, coeffs) -> IntVec:
        out = [0] * self.rank_X
        for c, v in zip(coeffs, basis):
            if c:
                for k, x in enumerate(v):
                    out[k] += c * x
        return tuple(out)

    @cached_property
    def weyl_order(self) -> int:
        return weyl_group_order(self.cartan, self.indices)

    @cached_property
    def rho2(self) -> IntVec:
        """Sum of the positive roots (``2 rho``) as a character."""
        out = [0] * self.rank_X
        for r in self.positive_roots:
            for k, x in enumerate(r):
                out[k] += x
        return tuple(out)

    def height(self, mu: Sequence[int]) -> Fraction:
        """``<rho, mu>``: for ``mu`` in the coroot span, the sum of its simple-coroot coefficients."""
        return Fraction(dot(self.rho2, mu), 2)

    @cached_property
    def fundamental_coweights(self) -> tuple[tuple[Fraction, ...], ...]:
        """Vectors ``omega_i`` with ``<alpha_j, omega_i> = delta_ij``.

        For ``gl`` these are the integral lifts ``(1,..,1,0,..,0)``; otherwise
        they lie in the rational span of the coroots.
        """
        n = self.semisimple_rank
        if self.isogeny == "gl":
            return tuple(tuple(Fraction(int(k <= i)) for k in range(self.rank_X)) for i in range(n))
        inv = rational_inverse(self.cartan)
        # omega_i = sum_j x_j alpha_j^vee with sum_j C[k][j] x_j = delta_ki
        out = []
        for i in range(n):
            coeffs = [inv[j][i] for j in range(n)]
            out.append(tuple(sum(coeffs[j] * self.simple_coroots[j][k] for j in range(n))
                             for k in range(self.rank_X)))
        return tuple(out)

    # -- Weyl group -----------------------------------------------------

    def weyl_group(self, subset: Iterable[int] | None = None) -> tuple:
        """All elements of the (parabolic) Weyl group as integer matrices."""
        sub = tuple(sorted(self.indices if subset is None else subset))
        return _weyl_group(self, sub)

    def orbit(self, v: Sequence[int], budget: int | None = None) -> set[IntVec]:
        v = tuple(v)
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for i in self.indices:
                y = self.reflect(i, x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
                    if budget is not None and len(seen) > budget:
                        from .errors import BudgetExceeded
                        raise BudgetExceeded("orbit exceeds budget", predicted=len(seen))
        return seen

    def stabilizer_order(self, v: Sequence[int]) -> int:
        """Order of the stabilizer of a dominant ``v`` (a parabolic subgroup)."""
        j = tuple(i for i in self.indices if dot(self.simple_roots[i], v) == 0)
        return weyl_group_order(self.cartan, j)

    def orbit_size(self, v: Sequence[int]) -> int:
        dom, _ = dominant_rep(self, v)
        return self.weyl_order // self.stabilizer_order(dom)


@lru_cache(maxsize=None)
def _positive_system(cartan: tuple, subset: tuple[int, ...]):
    pairs = {}
    frontier = []
    n = len(cartan)
    for i in subset:
        b = tuple(int(k == i) for k in range(n))
        pairs[b] = b
        frontier.append(b)
    while frontier:
        nxt = []
        for b in frontier:
            c = pairs[b]
            for k in subset:
                pb = sum(b[j] * cartan[j][k] for j in range(n))  # <beta, alpha_k^vee>
                pc = sum(cartan[k][j] * c[j] for j in range(n))  # <alpha_k, beta^vee>
                nb = tuple(x - pb * int(j == k) for j, x in enumerate(b))
                nc = tuple(x - pc * int(j == k) for j, x in enumerate(c))
                if all(x >= 0 for x in nb) and any(nb) and nb not in pairs:
                    pairs[nb] = nc
                    nxt.append(nb)
        frontier = nxt
    return tuple(sorted(pairs.items(), key=lambda kv: (sum(kv[0]), kv[0])))


def _components(cartan: tuple, subset: Sequence[int]) -> list[tuple[int, ...]]:
    left = set(subset)
    comps = []
    while left:
        start = left.pop()
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in list(left):
                if cartan[i][j] != 0:
                    left.discard(j)
                    comp.add(j)
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return comps


@lru_cache(maxsize=None)
def weyl_group_order(cartan: tuple, subset: tuple[int, ...]) -> int:
    """``|W|`` via ``l! * prod(highest-root coefficients) * det(C)`` per component."""
    total = 1
    for comp in _components(cartan, subset):
        pairs = _positive_system(cartan, comp)
        highest = max((b for b, _ in pairs), key=sum)
        sub = [[cartan[i][j] for j in comp] for i in comp]
        from sympy import Matrix

        det = int(Matrix(sub).det())
        coeff = math.prod(highest[i] for i in comp)
        total *= math.factorial(len(comp)) * coeff * det
    return total


@lru_cache(maxsize=None)
def _weyl_group(datum: RootDatum, subset: tuple[int, ...]) -> tuple:
    gens = [datum.reflection_matrix(i) for i in subset]
    one = identity(datum.rank_X)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = matmul(m, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return tuple(sorted(seen))


def build_root_datum(kind: str, rank: int | None = None, isogeny: str | None = None) -> RootDatum:
    """Construct a root datum from a type tag, rank and isogeny flavor.

    >>> build_root_datum("GL", 2, "gl").simple_coroots
    ((1, -1),)
    """
    k, r = _parse_type(kind, rank)
    isogeny = ("gl" if k == "GL" else "sc") if isogeny is None else isogeny.lower()
    if k == "GL":
        if isogeny not in ("gl",):
            raise RootDatumError("type GL only supports the 'gl' isogeny flavor")
        if r < 2:
            raise RootDatumError("GL_1 has no roots; rank must be at least 2")
        return _gl_datum(r)
    if isogeny == "gl":
        if k != "A":
            raise RootDatumError("the 'gl' flavor is only available for type A")
        return _gl_datum(r + 1)
    c = cartan_matrix(k, r)
    unit = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    if isogeny == "sc":
        coroots = tuple(unit)
        roots = tuple(tuple(c[i][j] for j in range(r)) for i in range(r))
    elif isogeny == "ad":
        roots = tuple(unit)
        coroots = tuple(tuple(c[i][j] for i in range(r)) for j in range(r))
    else:
        raise RootDatumError(f"unknown isogeny flavor {isogeny!r}")
    return RootDatum(k, r, isogeny, r, roots, coroots, c)


def _gl_datum(n: int) -> RootDatum:
    vecs = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        vecs.append(tuple(v))
    vecs = tuple(vecs)
    return RootDatum("A", n - 1, "gl", n, vecs, vecs, cartan_matrix("A", n - 1))


def root_datum_from_json(obj: dict) -> RootDatum:
    try:
        kind = obj["type"]
        rank = int(obj["rank"])
    except (KeyError, TypeError, ValueError) as exc:
        raise RootDatumError(f"malformed root datum: {exc}") from exc
    iso = obj.get("isogeny", "gl" if str(kind).upper() == "GL" else "sc")
    return build_root_datum(str(kind), rank, str(iso))


def dominant_rep(datum: RootDatum, v: Sequence[int]) -> tuple[Coweight, list[int]]:
    """Dominant element of the Weyl orbit of ``v`` and the word reaching it.

    Each step reflects in the leftmost simple root pairing negatively, so
    the word is reduced and deterministic.  Applying the word (first entry
    first) to ``v`` gives the dominant representative.
    """
    v = tuple(v)
    word = []
    while True:
        for i, a in enumerate(datum.simple_roots):
            if dot(a, v) < 0:
                v = datum.reflect(i, v)
                word.append(i)
                break
        else:
            return v, word


def coroot_coefficients(datum: RootDatum, x: Sequence, basis: Iterable[int] | None = None):
    """Integer coefficients of ``x`` on the simple coroots indexed by ``basis``.

    Returns ``None`` when ``x`` is not an integral combination of them.
    """
    basis = tuple(datum.indices if basis is None else basis)
    for i in basis:
        if not 0 <= i < datum.semisimple_rank:
            raise RootDatumError(f"simple index {i} out of range")
    sol = solve_rational([datum.simple_coroots[i] for i in basis], x)
    if sol is None or any(c.denominator != 1 for c in sol):
        return None
    return tuple(int(c) for c in sol)


def rational_coroot_coefficients(datum: RootDatum, x: Sequence):
    """Rational coefficients of ``x`` on all simple coroots, or ``None`` outside their span."""
    return solve_rational(datum.simple_coroots, x)


# -- Levi subgroups and X_M ---------------------------------------------------


@dataclass(frozen=True)
class LeviDatum:
    parent: RootDatum
    levi_simple: tuple[int, ...]

    @property
    def complement_simple(self) -> tuple[int, ...]:
        return tuple(i for i in self.parent.indices if i not in self.levi_simple)

    @cached_property
    def lattice(self) -> QuotientLattice:
        d = self.parent
        return _quotient(d, self.levi_simple)

    def __repr__(self):
        return f"LeviDatum({self.parent.cartan_type}, {list(self.levi_simple)})"


@lru_cache(maxsize=None)
def _quotient(datum: RootDatum, subset: tuple[int, ...]) -> QuotientLattice:
    return QuotientLattice(datum.rank_X, [datum.simple_coroots[i] for i in subset])


def levi(datum: RootDatum, subset: Iterable[int]) -> LeviDatum:
    sub = tuple(sorted(set(subset)))
    for i in sub:
        if not 0 <= i < datum.semisimple_rank:
            raise RootDatumError(f"simple index {i} out of range")
    return LeviDatum(datum, sub)


@dataclass(frozen=True)
class XMClass:
    """An element of ``X_M``; equality is decided by the Smith normal form."""

    levi_simple: tuple[int, ...]
    normal_form: tuple
    rep: Coweight = field(compare=False)


def project_XM(lv: LeviDatum, v: Sequence[int]) -> XMClass:
    v = tuple(int(x) for x in v)
    return XMClass(lv.levi_simple, lv.lattice.normal_form(v), v)


def check_same_levi(lv: LeviDatum, *classes) -> None:
    for c in classes:
        if c.levi_simple != lv.levi_simple:
            raise LeviMismatch(f"class belongs to Levi {c.levi_simple}, expected {lv.levi_simple}")


def require_dominant(datum: RootDatum, mu: Sequence[int]) -> None:
    if not datum.is_dominant(mu):
        raise NotDominant(f"{tuple(mu)} is not dominant")


def difference(a: XMClass, b: XMClass) -> Coweight:
    return vsub(b.rep, a.rep)
