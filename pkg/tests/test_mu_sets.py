import itertools
import random
from fractions import Fraction

import pytest

from adlsets import (
    BudgetExceeded,
    NotDominant,
    build_root_datum,
    convexity_oracle,
    enumerate_Pmu,
    in_Pmu,
    in_PmuM,
    levi,
    pmu_image,
    to_YM,
    validate_sigma,
)
from adlsets.mu_sets import clear_memo, same_XG
from adlsets.newton import dominant_coweights
from adlsets.orders import sigma_stable_levis

GL2 = build_root_datum("GL", 2)
GL3 = build_root_datum("GL", 3)


def majorized(nu, mu):
    """Rado: ``nu`` lies in the permutohedron of ``mu`` iff it is majorized by it."""
    a, b = sorted(nu, reverse=True), sorted(mu, reverse=True)
    if sum(a) != sum(b):
        return False
    return all(sum(a[:k]) <= sum(b[:k]) for k in range(1, len(a)))


def box(n, r):
    return itertools.product(range(-r, r + 1), repeat=n)


def test_in_Pmu_examples():
    assert in_Pmu(GL3, (2, 0, 0), (1, 1, 0))
    assert in_Pmu(GL3, (2, 0, 0), (0, 0, 2))
    assert not in_Pmu(GL3, (2, 0, 0), (1, 0, 0))
    with pytest.raises(NotDominant):
        in_Pmu(GL3, (0, 2, 0), (1, 1, 0))


def test_enumerate_small_gl():
    assert enumerate_Pmu(GL2, (1, 0)).elements == {(1, 0), (0, 1)}
    assert enumerate_Pmu(GL3, (1, 1, 0)).elements == {(1, 1, 0), (1, 0, 1), (0, 1, 1)}
    six = enumerate_Pmu(GL3, (2, 0, 0)).elements
    assert len(six) == 6
    assert six == {v for v in box(3, 2) if majorized(v, (2, 0, 0))}


@pytest.mark.parametrize("mu", [(1, 0, 0), (2, 1, 0), (3, 0, -1), (2, 2, -1)])
def test_gl3_box_scan_against_majorization(mu):
    elements = enumerate_Pmu(GL3, mu).elements
    for v in box(3, 3):
        want = majorized(v, mu)
        assert in_Pmu(GL3, mu, v) == want
        assert (v in elements) == want


def test_convexity_oracle_certificates():
    yes = convexity_oracle(GL3, (2, 0, 0), (1, 1, 0))
    assert yes.inside
    total = [sum(w * p[k] for p, w in yes.weights.items()) for k in range(3)]
    assert total == [1, 1, 0] and sum(yes.weights.values()) == 1
    assert all(w > 0 for w in yes.weights.values())
    trivial = convexity_oracle(GL3, (2, 0, 0), (2, 0, 0))
    assert trivial.weights == {(2, 0, 0): 1}
    no = convexity_oracle(GL2, (1, 0), (2, -1))
    assert not no.inside
    f = no.functional
    val = lambda p: sum(a * b for a, b in zip(f, p))
    assert val((1, 0)) <= no.bound and val((0, 1)) <= no.bound and val((2, -1)) > no.bound


def test_convexity_oracle_rational_point():
    v = convexity_oracle(GL3, (3, 0, 0), (Fraction(3, 2), Fraction(3, 2), 0))
    assert v.inside


@pytest.mark.parametrize("dtype", [("A", 2, "sc"), ("B", 2, "ad"), ("G2", 2, "sc")])
def test_criterion_against_hull(dtype):
    d = build_root_datum(*dtype)
    for mu in dominant_coweights(d, 3):
        for v in box(d.rank_X, 3):
            hull = bool(convexity_oracle(d, mu, v))
            assert in_Pmu(d, mu, v) == (hull and same_XG(d, mu, v))


@pytest.mark.parametrize("dtype", [("A", 2, "sc"), ("C", 2, "sc"), ("GL", 3, "gl")])
def test_weyl_stable(dtype):
    d = build_root_datum(*dtype)
    for mu in dominant_coweights(d, 3)[:6]:
        el = enumerate_Pmu(d, mu).elements
        assert d.orbit(mu) <= el
        for v in el:
            for i in d.indices:
                assert d.reflect(i, v) in el


def test_monotone():
    d = build_root_datum("B", 3, "sc")
    mus = dominant_coweights(d, 4)
    for a, b in itertools.permutations(mus, 2):
        if in_Pmu(d, b, a):
            assert enumerate_Pmu(d, a).elements <= enumerate_Pmu(d, b).elements


@pytest.mark.parametrize("dtype,perm", [(("A", 2, "sc"), [1, 0]), (("GL", 3, "gl"), None), (("C", 2, "sc"), None)])
def test_image_matches_projection(dtype, perm):
    d = build_root_datum(*dtype)
    s = validate_sigma(d, perm)
    for mu in dominant_coweights(d, 3)[:5]:
        for lv in sigma_stable_levis(d, s):
            img = pmu_image(lv, s, mu).elements
            want = {to_YM(lv, s, v).normal_form for v in enumerate_Pmu(d, mu).elements}
            assert img == want


def test_in_PmuM_extremes():
    s = validate_sigma(GL2)
    g = levi(GL2, [0])
    assert in_PmuM(g, s, (1, 0), (1, 0))
    assert in_PmuM(g, s, (1, 0), (0, 1))
    assert not in_PmuM(g, s, (1, 0), (0, 0))
    t = levi(GL2, [])
    assert in_PmuM(t, s, (1, 0), (0, 1))
    assert not in_PmuM(t, s, (1, 0), (2, -1))


def test_budget():
    d = build_root_datum("B", 3, "sc")
    clear_memo()
    with pytest.raises(BudgetExceeded) as info:
        enumerate_Pmu(d, dominant_coweights(d, 6)[-1], budget=5)
    assert info.value.predicted > 5


def test_disk_cache(tmp_path):
    clear_memo()
    a = enumerate_Pmu(GL3, (2, 1, 0), cache_dir=str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    clear_memo()
    b = enumerate_Pmu(GL3, (2, 1, 0), cache_dir=str(tmp_path))
    assert a.elements == b.elements


def test_random_membership_against_hull():
    d = build_root_datum("C", 3, "sc")
    rng = random.Random(21)
    mus = dominant_coweights(d, 3)
    for _ in range(60):
        mu = rng.choice(mus)
        v = tuple(rng.randint(-2, 2) for _ in range(3))
        assert in_Pmu(d, mu, v) == (bool(convexity_oracle(d, mu, v)) and same_XG(d, mu, v))
