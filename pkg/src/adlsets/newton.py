"""Newton points, basic classes and the non-emptiness decision procedures.

A basic element ``b`` of ``M(L)`` is represented only through its
invariant ``kappa_M(b)`` in ``Y_M``: everything decided here
depends on the basic sigma-conjugacy class alone.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetExceeded, HypothesisViolated
from .linalg import dot, matmul, matrix_order, matvec, rational_inverse
from .mu_sets import DEFAULT_BUDGET, enumerate_Pmu, in_PmuM, pmu_image
from .orders import (
    SigmaAction,
    YMClass,
    abar,
    in_YM_plus,
    leq_P_YM,
    require_sigma_stable,
    roots_in_N,
    sigma_stable_levis,
    to_YM,
    ym_lattice,
)
from .root_datum import LeviDatum, RootDatum, rational_coroot_coefficients


@dataclass(frozen=True)
class BasicClass:
    levi: LeviDatum
    sigma: SigmaAction
    kappa: YMClass

    @classmethod
    def from_coweight(cls, lv: LeviDatum, sigma: SigmaAction, rep: Sequence[int]) -> "BasicClass":
        return cls(lv, sigma, to_YM(lv, sigma, rep))


def newton_point(datum: RootDatum, sigma: SigmaAction, mu: Sequence[int], w=()) -> tuple[Fraction, ...]:
    """Average of ``(w sigma)^i mu`` over one period of ``w sigma``.

    ``w`` is a word in the simple reflections or a Weyl group matrix.
    """
    wm = datum.word_matrix(w) if not w or isinstance(w[0], int) else tuple(tuple(r) for r in w)
    ws = matmul(wm, sigma.matrix)
    r = matrix_order(ws)
    acc = [Fraction(0)] * datum.rank_X
    cur = tuple(mu)
    for _ in range(r):
        cur = matvec(ws, cur)
        for k, x in enumerate(cur):
            acc[k] += x
    return tuple(a / r for a in acc)


def newton_point_of_basic(b: BasicClass) -> tuple[Fraction, ...]:
    """Newton point of a basic class: the image of ``kappa`` in ``a_P``."""
    return abar(b.levi, b.sigma, b.kappa.rep)


def slopes_on_N(lv: LeviDatum, sigma: SigmaAction, b: BasicClass) -> list[Fraction]:
    """Pairings of the Newton point with the distinct roots of ``A_P`` in ``N``."""
    require_sigma_stable(lv, sigma)
    nu = newton_point_of_basic(b)
    datum = lv.parent
    basis = [abar(lv, sigma, tuple(int(i == k) for i in range(datum.rank_X))) for k in range(datum.rank_X)]
    seen = {}
    for r in roots_in_N(datum, lv.levi_simple):
        sig = tuple(dot(r, v) for v in basis)
        if sig not in seen:
            seen[sig] = dot(r, nu)
    return list(seen.values())


def mazur_check(lv: LeviDatum, sigma: SigmaAction, b: BasicClass, mu: Sequence[int]) -> bool:
    """Mazur's inequality ``kappa_M(b) <= mu`` in ``Y_M``.

    ``False`` certifies that the affine Deligne-Lusztig set is empty.
    """
    if not in_YM_plus(lv, sigma, b.kappa):
        raise HypothesisViolated("kappa_M(b) is not in Y_M^+")
    return leq_P_YM(lv, sigma, b.kappa, to_YM(lv, sigma, mu))


def nonempty(lv: LeviDatum, sigma: SigmaAction, b: BasicClass, mu: Sequence[int],
             budget: int = DEFAULT_BUDGET, cache_dir: str | None = None) -> bool:
    """Exact non-emptiness: ``kappa_M(b)`` lies in the image of ``P_mu``."""
    return in_PmuM(lv, sigma, mu, b.kappa, budget=budget, cache_dir=cache_dir)


@dataclass(frozen=True)
class HNHypothesis:
    basic_positive: bool
    kappa_equals_mu: bool

    @property
    def bijection_predicted(self) -> bool:
        return self.basic_positive and self.kappa_equals_mu


def hn_hypothesis(lv: LeviDatum, sigma: SigmaAction, b: BasicClass, mu: Sequence[int]) -> HNHypothesis:
    return HNHypothesis(in_YM_plus(lv, sigma, b.kappa), b.kappa == to_YM(lv, sigma, mu))


# -- converse scan -------------------------------------------------------------


def dominant_coweights(datum: RootDatum, max_height) -> list[tuple[int, ...]]:
    """Dominant coweights with ``<rho, mu> <= max_height``.

    For ``gl`` data only the representatives with last coordinate 0 are
    listed (central translations do not change any of the questions
    asked of them when sigma is trivial).
    """
    omegas = datum.fundamental_coweights
    heights = [datum.height(w) for w in omegas]
    out = []

    def rec(i, acc, budget):
        if i == len(omegas):
            if all(x.denominator == 1 for x in acc):
                out.append(tuple(int(x) for x in acc))
            return
        a = 0
        while a * heights[i] <= budget:
            rec(i + 1, [x + a * y for x, y in zip(acc, omegas[i])], budget - a * heights[i])
            a += 1

    rec(0, [Fraction(0)] * datum.rank_X, Fraction(max_height))
    return sorted(set(out), key=lambda m: (datum.height(m), m))


@dataclass
class ScanReport:
    datum: dict
    sigma: list
    height_bound: object
    counterexamples: list = field(default_factory=list)
    easy_direction_violations: list = field(default_factory=list)
    triples_examined: int = 0
    pairs_examined: int = 0
    levis: list = field(default_factory=list)
    mus: int = 0
    complete: bool = True
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.easy_direction_violations

    def to_json(self) -> dict:
        d = asdict(self)
        d["height_bound"] = str(self.height_bound)
        d["passed"] = self.passed
        return d


def _orbit_bounds(lv: LeviDatum, sigma: SigmaAction, mu) -> dict:
    """Upper bounds for orbit coefficients of ``mu - nu`` with ``nu`` dominant."""
    coeffs = rational_coroot_coefficients(lv.parent, _semisimple_part(lv.parent, mu))
    out = {}
    for o in sigma.orbits(lv.complement_simple):
        out[o] = math.floor(sum(coeffs[i] for i in o))
    return out


def _semisimple_part(datum: RootDatum, mu):
    """Projection of ``mu`` onto the rational span of the coroots."""
    inv_c = rational_inverse(datum.cartan)
    pairings = [dot(a, mu) for a in datum.simple_roots]
    r = datum.semisimple_rank
    out = [Fraction(0)] * datum.rank_X
    for j in range(r):
        c = sum(inv_c[j][k] * pairings[k] for k in range(r))
        out = [x + c * y for x, y in zip(out, datum.simple_coroots[j])]
    return tuple(out)


def converse_scan(datum: RootDatum, sigma: SigmaAction, levi_filter: Iterable[Sequence[int]] | None = None,
                  height_bound=4, budget: int = DEFAULT_BUDGET, cache_dir: str | None = None,
                  time_limit: float | None = None) -> ScanReport:
    """Search for counterexamples to the converse of Mazur's inequality.

    For each sigma-stable standard Levi and dominant ``mu`` up to the
    height bound, every ``nu`` in ``Y_M^+`` below ``mu`` is tested for
    membership in the image of ``P_mu``.  The reverse implication is
    checked on the whole image as a consistency test.
    """
    levis = sigma_stable_levis(datum, sigma)
    if levi_filter is not None:
        wanted = {tuple(sorted(f)) for f in levi_filter}
        levis = [lv for lv in levis if lv.levi_simple in wanted]
    report = ScanReport(datum.to_json(), list(sigma.perm), height_bound,
                        levis=[list(lv.levi_simple) for lv in levis])
    mus = dominant_coweights(datum, height_bound)
    report.mus = len(mus)
    start = time.monotonic()
    examined = 0
    try:
        for mu in mus:
            for lv in levis:
                if time_limit is not None and time.monotonic() - start > time_limit:
                    raise BudgetExceeded("time limit reached")
                _scan_pair(lv, sigma, mu, report, budget, cache_dir)
                report.pairs_examined += 1
                examined += 1
    except BudgetExceeded as exc:
        report.complete = False
        report.note = f"stopped after {examined} (mu, M) pairs: {exc}"
        raise BudgetExceeded(str(exc), predicted=exc.predicted, partial=report) from exc
    return report


def _record(lv, sigma, mu, nu_rep, cond_order, cond_pmu):
    return {
        "datum": lv.parent.to_json(),
        "sigma": list(sigma.perm),
        "levi": list(lv.levi_simple),
        "mu": list(mu),
        "nu": list(nu_rep),
        "cond_order": cond_order,
        "cond_pmu": cond_pmu,
    }


def _scan_pair(lv: LeviDatum, sigma: SigmaAction, mu, report: ScanReport, budget, cache_dir) -> None:
    datum = lv.parent
    image = pmu_image(lv, sigma, mu, budget=budget, cache_dir=cache_dir).elements
    lat = ym_lattice(datum, lv.levi_simple, sigma.perm)
    mu_y = to_YM(lv, sigma, mu)
    orbits = sigma.orbits(lv.complement_simple)
    bounds = _orbit_bounds(lv, sigma, mu)
    seen = set()
    for es in itertools.product(*(range(bounds[o] + 1) for o in orbits)):
        rep = list(mu)
        for o, e in zip(orbits, es):
            rep = [x - e * y for x, y in zip(rep, datum.simple_coroots[o[0]])]
        rep = tuple(rep)
        nf = lat.normal_form(rep)
        if nf in seen:
            continue
        seen.add(nf)
        nu = YMClass(lv.levi_simple, sigma.perm, nf, rep)
        if not in_YM_plus(lv, sigma, nu):
            continue
        report.triples_examined += 1
        if nf not in image:
            report.counterexamples.append(_record(lv, sigma, mu, rep, True, False))
    # the easy direction, over the whole image inside Y_M^+
    reps = {}
    for nu in enumerate_Pmu(datum, mu, budget=budget, cache_dir=cache_dir).elements:
        reps.setdefault(lat.normal_form(nu), nu)
    for nf, rep in reps.items():
        y = YMClass(lv.levi_simple, sigma.perm, nf, rep)
        if in_YM_plus(lv, sigma, y) and not leq_P_YM(lv, sigma, y, mu_y):
            report.easy_direction_violations.append(_record(lv, sigma, mu, rep, False, True))
    assert set(reps) == set(image)
