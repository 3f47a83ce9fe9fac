"""The finite sets P_mu and their images in Y_M.

``P_mu`` consists of the coweights with the same ``X_G`` image as ``mu``
that lie in the convex hull of the Weyl orbit of ``mu``.  Membership is
decided by the dominance criterion; :func:`convexity_oracle` checks the
hull condition directly with an exact LP and exists to validate that
shortcut.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, NotDominant
from .exact_lp import feasible_point
from .linalg import IntVec, dot, vsub
from .orders import SigmaAction, require_sigma_stable, to_YM, ym_lattice
from .root_datum import LeviDatum, RootDatum, coroot_coefficients, dominant_rep, project_XM, levi

DEFAULT_BUDGET = 10**6

_PMU_MEMO: dict[tuple, "PmuSet"] = {}
_PMUM_MEMO: dict[tuple, frozenset] = {}


@dataclass(frozen=True)
class PmuSet:
    datum: RootDatum = field(repr=False)
    mu: IntVec
    elements: frozenset
    generation_stats: dict = field(compare=False, default_factory=dict)

    def __contains__(self, nu) -> bool:
        return tuple(nu) in self.elements

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class PmuMSet:
    levi: LeviDatum = field(repr=False)
    sigma: SigmaAction = field(repr=False)
    mu: IntVec
    elements: frozenset  # normal forms in Y_M

    def __len__(self) -> int:
        return len(self.elements)


def _require_dominant(datum: RootDatum, mu) -> IntVec:
    mu = tuple(int(x) for x in mu)
    if not datum.is_dominant(mu):
        raise NotDominant(f"{mu} is not dominant")
    return mu


def same_XG(datum: RootDatum, a: Sequence[int], b: Sequence[int]) -> bool:
    g = levi(datum, datum.indices)
    return project_XM(g, a) == project_XM(g, b)


def in_Pmu(datum: RootDatum, mu: Sequence[int], nu: Sequence[int]) -> bool:
    mu = _require_dominant(datum, mu)
    if not same_XG(datum, mu, nu):
        return False
    dom, _ = dominant_rep(datum, nu)
    coeffs = coroot_coefficients(datum, vsub(mu, dom))
    # equal X_G classes force integrality
    assert coeffs is not None, "X_G-equal difference must be an integral coroot combination"
    return all(c >= 0 for c in coeffs)


def dominant_below(datum: RootDatum, mu: Sequence[int]) -> list[IntVec]:
    """Dominant ``lam`` with ``mu - lam`` a non-negative coroot combination.

    Descends from ``mu`` by subtracting positive coroots while staying
    dominant; every dominant element below ``mu`` is reached this way.
    """
    mu = _require_dominant(datum, mu)
    seen = {mu}
    stack = [mu]
    while stack:
        lam = stack.pop()
        for c in datum.positive_coroots:
            nxt = vsub(lam, c)
            if nxt not in seen and datum.is_dominant(nxt):
                seen.add(nxt)
                stack.append(nxt)
    return sorted(seen, reverse=True)


def predicted_size(datum: RootDatum, mu: Sequence[int]) -> int:
    return sum(datum.weyl_order // datum.stabilizer_order(lam) for lam in dominant_below(datum, mu))


def _cache_path(cache_dir: str, datum: RootDatum, mu: IntVec) -> str:
    h = hashlib.sha256(json.dumps(datum.to_json(), sort_keys=True).encode()).hexdigest()[:16]
    tag = "_".join(str(x) for x in mu)
    return os.path.join(cache_dir, f"pmu_{h}_{tag}.json")


def enumerate_Pmu(datum: RootDatum, mu: Sequence[int], budget: int = DEFAULT_BUDGET,
                  cache_dir: str | None = None) -> PmuSet:
    """All of ``P_mu``: dominant descent from ``mu`` followed by Weyl orbits."""
    mu = _require_dominant(datum, mu)
    key = (datum, mu)
    if key in _PMU_MEMO:
        return _PMU_MEMO[key]
    if cache_dir:
        path = _cache_path(cache_dir, datum, mu)
        if os.path.exists(path):
            with open(path) as fh:
                doc = json.load(fh)
            if doc.get("datum") == datum.to_json() and tuple(doc.get("mu", ())) == mu:
                pm = PmuSet(datum, mu, frozenset(tuple(e) for e in doc["elements"]),
                            {tuple(json.loads(k)): v for k, v in doc["stats"].items()})
                _PMU_MEMO[key] = pm
                return pm
    doms = dominant_below(datum, mu)
    sizes = {lam: datum.weyl_order // datum.stabilizer_order(lam) for lam in doms}
    total = sum(sizes.values())
    if total > budget:
        raise BudgetExceeded(f"P_mu for {mu} has {total} elements, budget {budget}", predicted=total)
    elements = set()
    for lam in doms:
        orb = datum.orbit(lam)
        assert len(orb) == sizes[lam]
        elements |= orb
    pm = PmuSet(datum, mu, frozenset(elements), sizes)
    _PMU_MEMO[key] = pm
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        doc = {
            "datum": datum.to_json(),
            "mu": list(mu),
            "elements": sorted(list(e) for e in elements),
            "stats": {json.dumps(list(k)): v for k, v in sizes.items()},
        }
        with open(_cache_path(cache_dir, datum, mu), "w") as fh:
            json.dump(doc, fh)
    return pm


def pmu_image(lv: LeviDatum, sigma: SigmaAction, mu: Sequence[int], budget: int = DEFAULT_BUDGET,
              cache_dir: str | None = None) -> PmuMSet:
    require_sigma_stable(lv, sigma)
    datum = lv.parent
    mu = _require_dominant(datum, mu)
    key = (datum, lv.levi_simple, sigma.perm, mu)
    if key not in _PMUM_MEMO:
        pm = enumerate_Pmu(datum, mu, budget=budget, cache_dir=cache_dir)
        lat = ym_lattice(datum, lv.levi_simple, sigma.perm)
        _PMUM_MEMO[key] = frozenset(lat.normal_form(nu) for nu in pm.elements)
    return PmuMSet(lv, sigma, mu, _PMUM_MEMO[key])


def in_PmuM(lv: LeviDatum, sigma: SigmaAction, mu: Sequence[int], y, budget: int = DEFAULT_BUDGET,
            cache_dir: str | None = None) -> bool:
    """Whether the ``Y_M`` class ``y`` is the image of some element of ``P_mu``."""
    if not hasattr(y, "normal_form"):
        y = to_YM(lv, sigma, y)
    return y.normal_form in pmu_image(lv, sigma, mu, budget, cache_dir).elements


@dataclass(frozen=True)
class HullVerdict:
    inside: bool
    weights: dict | None = None  # orbit point -> convex weight
    functional: tuple | None = None  # separating linear form
    bound: Fraction | None = None  # functional <= bound on the orbit, > bound at nu

    def __bool__(self) -> bool:
        return self.inside


def convexity_oracle(datum: RootDatum, mu: Sequence[int], nu: Sequence, budget: int = 20000) -> HullVerdict:
    """Decide ``nu in Conv(W mu)`` by exact linear feasibility over the orbit points."""
    mu = tuple(int(x) for x in mu)
    pts = sorted(datum.orbit(mu, budget=budget))
    dim = datum.rank_X
    a = [[p[k] for p in pts] for k in range(dim)] + [[1] * len(pts)]
    b = [Fraction(x) for x in nu] + [Fraction(1)]
    res = feasible_point(a, b)
    if res.feasible:
        w = {p: c for p, c in zip(pts, res.x) if c}
        return HullVerdict(True, weights=w)
    y = res.farkas
    f, y0 = y[:dim], y[dim]
    # y.A <= 0 and y.b > 0 give f(p) <= -y0 < f(nu)
    assert all(dot(f, p) + y0 <= 0 for p in pts) and dot(f, b[:dim]) + y0 > 0
    return HullVerdict(False, functional=tuple(f), bound=-y0)


def clear_memo() -> None:
    _PMU_MEMO.clear()
    _PMUM_MEMO.clear()
