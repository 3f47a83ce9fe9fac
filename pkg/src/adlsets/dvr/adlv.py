"""Window-bounded enumeration of affine Deligne-Lusztig sets for ``GL_n``.

Points of ``G(L)/G(o_L)`` are lattices ``x o^n``; each class has a unique
upper triangular column normal form with diagonal ``t^{a_i}`` and
off-diagonal entries ``x_ij`` that are polynomials in ``t`` with exponents
below ``a_i``.  ``L`` is replaced by ``F_{q^s}((t))`` and ``sigma`` by the
``q``-Frobenius on coefficients.  The window of radius ``R`` keeps the
classes whose elementary divisors lie in ``[-R, R]``; then
``a_i`` lies in ``[-R, R]`` and every exponent in ``x`` is at least ``-R``.

Found classes are certificates.  Emptiness, and equality of two sets, are
only claimed within the stated ``(radius, s, N)`` contract.

When ``b`` is block upper triangular the search runs block by block:
diagonal blocks of ``x`` are enumerated with pruning on the corresponding
blocks of ``x^{-1} b sigma(x)``, and the off-diagonal block is pinned down
by ``F_p``-linear algebra, since the condition that ``Y_12`` be
sufficiently integral is affine in its digits.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from ..errors import BudgetExceeded, HypothesisViolated
from ..newton import BasicClass, hn_hypothesis, mazur_check
from ..orders import validate_sigma
from ..root_datum import build_root_datum, levi
from .field import FiniteField, _galois, get_field, quiet
from .matrix import LaurentMatrix, _offsets, block_diagonal
from .retraction import block_sums, cartan_by_minors
from . import series as _series
from .series import Series

DEFAULT_ADLV_BUDGET = 200_000


# -- normal forms ---------------------------------------------------------------


def _polys(field: FiniteField, lo: int, hi: int) -> Iterator[Series]:
    """All polynomials with exponents in ``[lo, hi)``."""
    width = max(0, hi - lo)
    for digits in itertools.product(range(field.order), repeat=width):
        yield Series(field, lo, digits)


def enumerate_hnf(field: FiniteField, m: int, radius: int) -> Iterator[LaurentMatrix]:
    """Column normal forms of size ``m`` with entries in the window."""
    z = Series.zero(field)
    for diag in itertools.product(range(-radius, radius + 1), repeat=m):
        slots = [(i, j) for i in range(m) for j in range(i + 1, m)]
        choices = [list(_polys(field, -radius, diag[i])) for i, _ in slots]
        for vals in itertools.product(*choices):
            rows = [[z] * m for _ in range(m)]
            for i in range(m):
                rows[i][i] = Series.monomial(field, diag[i])
            for (i, j), v in zip(slots, vals):
                rows[i][j] = v
            yield LaurentMatrix(field, rows)


def hnf_key(x: LaurentMatrix) -> tuple:
    return tuple((x[i, j].start, x[i, j].coeffs) for i in range(x.n) for j in range(i, x.n))


def hnf_inverse(x: LaurentMatrix) -> LaurentMatrix:
    """Exact inverse of a normal form (its determinant is a monomial)."""
    return x.inverse()


def twisted(x: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    """``x^{-1} b sigma(x)``."""
    return hnf_inverse(x) * b * x.frob()


def minor_bounds(mu: Sequence[int]) -> list[int]:
    """``d_k`` of ``mu(t)``: sums of the ``k`` smallest entries."""
    s = sorted(mu)
    return [sum(s[:k]) for k in range(1, len(s) + 1)]


def _minors_ok(y: LaurentMatrix, bounds: Sequence[int]) -> bool:
    for k in range(1, y.n + 1):
        for r in itertools.combinations(range(y.n), k):
            for c in itertools.combinations(range(y.n), k):
                v = y.minor(r, c)
                if v.coeffs and v.start < bounds[k - 1]:
                    return False
    return True


def block_structure(b: LaurentMatrix) -> list[int]:
    """Finest block sizes for which ``b`` is block upper triangular."""
    cuts = [0]
    for k in range(1, b.n):
        if all(not b[i, j].coeffs and b[i, j].prec is None for i in range(k, b.n) for j in range(k)):
            cuts.append(k)
    cuts.append(b.n)
    return [cuts[i + 1] - cuts[i] for i in range(len(cuts) - 1)]


# -- the search -------------------------------------------------------------------


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.examined = 0

    def tick(self, k: int = 1) -> None:
        self.examined += k
        if self.examined > self.budget:
            raise BudgetExceeded(f"examined more than {self.budget} candidate lattices", predicted=None)


def _solve_affine_fp(p: int, a: list[list[int]], rhs: list[int]):
    """Particular solution and kernel basis of ``a z = rhs`` over ``F_p``, or ``None``."""
    with quiet():
        return _solve_affine_fp_raw(p, a, rhs)


def _solve_affine_fp_raw(p: int, a: list[list[int]], rhs: list[int]):
    gf = _galois().GF(p)
    nvars = len(a[0]) if a else 0
    if not a:
        return [0] * nvars, np.eye(nvars, dtype=int).tolist()
    aug = gf(np.array([row + [r] for row, r in zip(a, rhs)], dtype=int) % p)
    red = aug.row_reduce()
    sol = [0] * nvars
    pivots = []
    for row in np.array(red, dtype=int):
        nz = np.nonzero(row)[0]
        if len(nz) == 0:
            continue
        if nz[0] == nvars:
            return None
        pivots.append(nz[0])
        sol[nz[0]] = int(row[nvars])
    kernel = np.array(gf(np.array(a, dtype=int) % p).null_space(), dtype=int).tolist()
    return sol, kernel


def _search(b: LaurentMatrix, sizes: list[int], radius: int, bounds: list[int], counter: _Counter) -> list:
    """Normal forms ``x`` whose twist passes the minor bounds (block recursion)."""
    f = b.field
    if len(sizes) == 1:
        out = []
        for x in enumerate_hnf(f, b.n, radius):
            counter.tick()
            if _minors_ok(twisted(x, b), bounds):
                out.append(x)
        return out
    n1 = sizes[0]
    n2 = b.n - n1
    top = range(n1)
    bot = range(n1, b.n)
    b11, b22 = b.submatrix(top, top), b.submatrix(bot, bot)
    b12 = [[b[i, j] for j in bot] for i in top]
    xs = _search(b11, sizes[:1], radius, bounds, counter)
    ds = _search(b22, sizes[1:], radius, bounds, counter)
    out = []
    for x in xs:
        xinv = hnf_inverse(x)
        a = [x[i, i].start for i in range(n1)]
        slots = [(i, j, e) for i in range(n1) for j in range(n2) for e in range(-radius, a[i])]
        for d in ds:
            counter.tick()
            y22 = twisted(d, b22)

            def y12(zdig: dict) -> LaurentMatrix:
                rows = [[Series.zero(f)] * n2 for _ in range(n1)]
                for (i, j, e), c in zdig.items():
                    rows[i][j] = rows[i][j] + Series.monomial(f, e, c)
                zm = rows
                return _radd(_rmul(xinv, _radd(_rmul(b11, _rfrob(zm)), _rmul(b12, d.frob().rows))),
                             _rneg(_rmul(xinv, _rmul(zm, y22.rows))))

            for z in _solve_offdiag(f, slots, y12, bounds[0], counter):
                full = _assemble(f, x, d, z)
                if _minors_ok(twisted(full, b), bounds):
                    out.append(full)
    return out


# small rectangular helpers (rows are lists of Series)

def _rmul(a, b):
    a_rows = a.rows if isinstance(a, LaurentMatrix) else a
    b_rows = b.rows if isinstance(b, LaurentMatrix) else b
    f = (a_rows[0][0] if a_rows and a_rows[0] else b_rows[0][0]).field
    cols = list(zip(*b_rows))
    out = []
    for r in a_rows:
        row = []
        for c in cols:
            acc = Series.zero(f)
            for x, y in zip(r, c):
                if x.coeffs and y.coeffs:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def _radd(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _rneg(a):
    return [[-x for x in r] for r in a]


def _rfrob(a):
    return [[x.frob() for x in r] for r in a]


def _solve_offdiag(f: FiniteField, slots, y12, lowest: int, counter: _Counter):
    """All off-diagonal digit choices with every ``Y_12`` entry of valuation ``>= lowest``."""
    p, deg = f.p, f.degree
    base = y12({})
    unknowns = [(s, p**k) for s in slots for k in range(deg)]
    columns = []
    for s, c in unknowns:
        img = y12({s: c})
        columns.append([[u - v for u, v in zip(r1, r0)] for r1, r0 in zip(img, base)])
    # constraint coordinates: (entry, exponent < lowest, F_p digit)
    exps = set()
    for mat in [base] + columns:
        for r in mat:
            for x in r:
                exps.update(e for e in x.terms() if e < lowest)
    coords = [(i, j, e, k) for i in range(len(base)) for j in range(len(base[0]))
              for e in sorted(exps) for k in range(deg)]

    def digit(x: Series, e: int, k: int) -> int:
        return f.digits(x.coeff(e))[k]

    a = [[digit(col[i][j], e, k) for col in columns] for (i, j, e, k) in coords]
    rhs = [(-digit(base[i][j], e, k)) % p for (i, j, e, k) in coords]
    if not unknowns:
        if all(r == 0 for r in rhs):
            yield {}
        return
    solved = _solve_affine_fp(p, a, rhs) if coords else ([0] * len(unknowns), np.eye(len(unknowns), dtype=int).tolist())
    if solved is None:
        return
    sol, kernel = solved
    counter.tick(p ** len(kernel))
    for coeffs in itertools.product(range(p), repeat=len(kernel)):
        vec = list(sol)
        for c, kv in zip(coeffs, kernel):
            if c:
                vec = [(v + c * w) % p for v, w in zip(vec, kv)]
        z: dict = {}
        for (s, _), v in zip(unknowns, vec):
            z.setdefault(s, [])
            z[s].append(v)
        yield {s: f.from_digits(ds) for s, ds in z.items() if any(ds)}


def _assemble(f: FiniteField, x: LaurentMatrix, d: LaurentMatrix, zdig: dict) -> LaurentMatrix:
    n1, n2 = x.n, d.n
    z = Series.zero(f)
    rows = [[z] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            rows[i][j] = x[i, j]
    for i in range(n2):
        for j in range(n2):
            rows[n1 + i][n1 + j] = d[i, j]
    for (i, j, e), c in zdig.items():
        rows[i][n1 + j] = rows[i][n1 + j] + Series.monomial(f, e, c)
    return LaurentMatrix(f, rows)


def _in_window(x: LaurentMatrix, radius: int) -> bool:
    inv = cartan_by_minors(x)
    return -radius <= min(inv) and max(inv) <= radius


@dataclass
class AdlvResult:
    mu: tuple[int, ...]
    radius: int
    s: int
    q: int
    precision: int
    classes: dict = field(repr=False)  # key -> LaurentMatrix
    examined: int = 0

    @property
    def nonempty(self) -> bool:
        return bool(self.classes)

    @property
    def contract(self) -> dict:
        return {"radius": self.radius, "s": self.s, "N": self.precision}

    def qualifier(self) -> str:
        if self.classes:
            return "non-empty (certified by explicit classes)"
        return f"empty within (radius={self.radius}, s={self.s}, N={self.precision})"


def adlv_enumerate(mu: Sequence[int], b: LaurentMatrix, radius: int = 2,
                   budget: int = DEFAULT_ADLV_BUDGET, use_blocks: bool = True) -> AdlvResult:
    """All window classes ``x`` with ``x^{-1} b sigma(x)`` in ``K mu(t) K``.

    ``use_blocks=False`` forces the plain exhaustive search (used to
    cross-check the block recursion).
    """
    mu = tuple(int(v) for v in mu)
    if len(mu) != b.n:
        raise ValueError("mu and b have different sizes")
    if not b.exact:
        raise ValueError("b must be an exact Laurent polynomial matrix")
    target = tuple(sorted(mu, reverse=True))
    bounds = minor_bounds(mu)
    counter = _Counter(budget)
    found = {}
    sizes = block_structure(b) if use_blocks else [b.n]
    for x in _search(b, sizes, radius, bounds, counter):
        if cartan_by_minors(twisted(x, b)) == target and _in_window(x, radius):
            found[hnf_key(x)] = x
    f = b.field
    return AdlvResult(mu, radius, f.s, f.q, _series.DEFAULT_PRECISION, found, counter.examined)


def adlv_levi(mu: Sequence[int], b: LaurentMatrix, blocks: Sequence[int], radius: int = 2,
              budget: int = DEFAULT_ADLV_BUDGET) -> AdlvResult:
    """``X^M_mu(b)`` for block-diagonal ``b``, embedded as block-diagonal normal forms."""
    mu = tuple(int(v) for v in mu)
    offs = _offsets(blocks)
    if not is_block_diagonal(b, blocks):
        raise HypothesisViolated("b is not block diagonal for the given Levi")
    per_block = []
    for a in range(len(blocks)):
        sub = b.block(blocks, a, a)
        res = adlv_enumerate(mu[offs[a]:offs[a + 1]], sub, radius, budget)
        per_block.append(list(res.classes.values()))
    f = b.field
    found = {}
    for parts in itertools.product(*per_block):
        x = block_diagonal(f, parts)
        if _in_window(x, radius):
            found[hnf_key(x)] = x
    return AdlvResult(mu, radius, f.s, f.q, _series.DEFAULT_PRECISION, found)


def is_block_diagonal(b: LaurentMatrix, blocks: Sequence[int]) -> bool:
    offs = _offsets(blocks)
    owner = {}
    for a in range(len(blocks)):
        for i in range(offs[a], offs[a + 1]):
            owner[i] = a
    return all(not b[i, j].coeffs and b[i, j].prec is None
               for i in range(b.n) for j in range(b.n) if owner[i] != owner[j])


# -- Hodge-Newton -------------------------------------------------------------------


def basic_slope(b: LaurentMatrix, max_power: int | None = None):
    """``(c, r)`` when ``b sigma(b) ... sigma^{r-1}(b)`` is ``t^c`` times a unit.

    Such an ``r`` certifies that ``b`` is basic with the single slope
    ``c / r``.  Returns ``None`` if no ``r <= max_power`` works.
    """
    max_power = max_power or 2 * b.n
    prod = b
    cur = b
    for r in range(1, max_power + 1):
        inv = cartan_by_minors(prod)
        if len(set(inv)) == 1:
            return inv[0], r
        cur = cur.frob()
        prod = prod * cur
    return None


def gl_levi(n: int, blocks: Sequence[int]):
    """The abstract root datum of ``GL_n`` with the standard Levi for ``blocks``."""
    datum = build_root_datum("A", n - 1, "gl")
    offs = _offsets(blocks)
    cuts = set(offs[1:-1])
    subset = [i for i in range(n - 1) if (i + 1) not in cuts]
    return datum, levi(datum, subset), validate_sigma(datum)


def kappa_rep(b: LaurentMatrix, blocks: Sequence[int]) -> tuple[int, ...]:
    """A coweight representing ``kappa_M(b)``: block determinant valuations."""
    offs = _offsets(blocks)
    rep = [0] * b.n
    for a in range(len(blocks)):
        rep[offs[a]] = b.block(blocks, a, a).det_valuation
    return tuple(rep)


@dataclass
class HodgeNewtonReport:
    mu: tuple[int, ...]
    blocks: tuple[int, ...]
    contract: dict
    status: str  # "equal", "mismatch", "skipped"
    g_count: int = 0
    m_count: int = 0
    extra_in_G: list = field(default_factory=list)
    missing_from_G: list = field(default_factory=list)
    slopes: list = field(default_factory=list)
    kappa: list = field(default_factory=list)
    mazur: bool | None = None
    mazur_cross_check: bool | None = None

    @property
    def equal(self) -> bool:
        return self.status == "equal"

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "blocks": list(self.blocks),
            "contract": self.contract,
            "status": self.status,
            "g_count": self.g_count,
            "m_count": self.m_count,
            "extra_in_G": self.extra_in_G,
            "missing_from_G": self.missing_from_G,
            "slopes": self.slopes,
            "kappa": self.kappa,
            "mazur": self.mazur,
            "mazur_cross_check": self.mazur_cross_check,
        }


def hodge_newton_verify(mu: Sequence[int], b: LaurentMatrix, blocks: Sequence[int], radius: int = 2,
                        budget: int = DEFAULT_ADLV_BUDGET) -> HodgeNewtonReport:
    """Compare ``X^G_mu(b)`` with the image of ``X^M_mu(b)`` inside the window."""
    mu = tuple(int(v) for v in mu)
    blocks = tuple(int(v) for v in blocks)
    n = b.n
    f = b.field
    contract = {"radius": radius, "s": f.s, "N": _series.DEFAULT_PRECISION}
    if not is_block_diagonal(b, blocks):
        raise HypothesisViolated("b is not block diagonal for the given Levi")
    slopes = []
    for a in range(len(blocks)):
        cert = basic_slope(b.block(blocks, a, a))
        if cert is None:
            raise HypothesisViolated(f"block {a} of b is not certified basic")
        slopes.append(str(Fraction(cert[0], cert[1])))
    datum, lv, sigma = gl_levi(n, blocks)
    kap = BasicClass.from_coweight(lv, sigma, kappa_rep(b, blocks))
    report = HodgeNewtonReport(mu, blocks, contract, "skipped", slopes=slopes,
                               kappa=list(block_sums(kappa_rep(b, blocks), blocks)))
    try:
        report.mazur = mazur_check(lv, sigma, kap, mu)
    except HypothesisViolated:
        report.mazur = None
    if not hn_hypothesis(lv, sigma, kap, mu).bijection_predicted:
        return report
    g_set = adlv_enumerate(mu, b, radius, budget)
    m_set = adlv_levi(mu, b, blocks, radius, budget)
    report.g_count = len(g_set.classes)
    report.m_count = len(m_set.classes)
    report.extra_in_G = [g_set.classes[k].to_strings() for k in sorted(set(g_set.classes) - set(m_set.classes))]
    report.missing_from_G = [m_set.classes[k].to_strings() for k in sorted(set(m_set.classes) - set(g_set.classes))]
    report.status = "equal" if not report.extra_in_G and not report.missing_from_G else "mismatch"
    if g_set.nonempty:
        report.mazur_cross_check = bool(report.mazur)
    return report


def parse_b(rows: Sequence[Sequence[str]], q: int, s: int) -> LaurentMatrix:
    return LaurentMatrix.parse(get_field(q, s), rows)
