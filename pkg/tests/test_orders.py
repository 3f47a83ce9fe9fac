import itertools
import random
from fractions import Fraction

import pytest

from adlsets import (
    LeviMismatch,
    LeviNotSigmaStable,
    NotAnAutomorphism,
    NotDominant,
    build_root_datum,
    leq_P,
    leq_P_YM,
    levi,
    project_XM,
    reform_equiv_report,
    to_YM,
    validate_sigma,
)
from adlsets.orders import (
    abar,
    flat,
    in_YM_plus,
    pr_M,
    real_leq,
    sigma_stable_levis,
    to_YG,
)

A2 = build_root_datum("A", 2, "sc")
GL3 = build_root_datum("GL", 3)
FOLD = validate_sigma(A2, [1, 0])


def gl_dominance(a, b):
    """``a <= b`` for ``GL_n`` with ``P = B``: partial sums of ``b - a``."""
    d = [y - x for x, y in zip(a, b)]
    return sum(d) == 0 and all(sum(d[:k]) >= 0 for k in range(1, len(d)))


def vec(rng, n, r=3):
    return tuple(rng.randint(-r, r) for _ in range(n))


def test_validate_sigma():
    for dtype in [("A", 3, "sc"), ("B", 2, "sc"), ("G2", 2, "sc"), ("GL", 3, "gl")]:
        d = build_root_datum(*dtype)
        s = validate_sigma(d)
        assert s.order == 1 and s.is_split
    assert FOLD.order == 2
    with pytest.raises(NotAnAutomorphism):
        validate_sigma(build_root_datum("B", 2), [1, 0])
    with pytest.raises(NotAnAutomorphism):
        validate_sigma(A2, [0, 0])


def test_d4_triality_order():
    d = build_root_datum("D", 4, "sc")
    assert validate_sigma(d, [2, 1, 3, 0]).order == 3


def test_gl_flip_is_cartan_compatible():
    s = validate_sigma(GL3, [1, 0])
    for i, c in enumerate(GL3.simple_coroots):
        assert s.apply(c) == GL3.simple_coroots[s.perm[i]]
    assert s.apply(s.apply((3, 1, -2))) == (3, 1, -2)


def test_to_YM_identity_sigma():
    sid = validate_sigma(GL3)
    lv = levi(GL3, [0])
    rng = random.Random(1)
    for _ in range(50):
        a, b = vec(rng, 3), vec(rng, 3)
        assert (to_YM(lv, sid, a) == to_YM(lv, sid, b)) == (project_XM(lv, a) == project_XM(lv, b))


def test_to_YM_folded_a2():
    t = levi(A2, [])
    a1, a2 = A2.simple_coroots
    assert to_YM(t, FOLD, a1) == to_YM(t, FOLD, a2)
    assert to_YM(t, FOLD, (1, 1)) == to_YM(t, FOLD, (2, 0))
    assert to_YM(t, FOLD, (1, 1)) != to_YM(t, FOLD, (1, 0))
    # the kernel is (1 - sigma) X: one generator here
    assert to_YM(t, FOLD, (1, -1)) == to_YM(t, FOLD, (0, 0))


def test_to_YM_requires_stable_levi():
    with pytest.raises(LeviNotSigmaStable):
        to_YM(levi(A2, [0]), FOLD, (1, 0))


def test_leq_P_examples():
    b = levi(GL3, [])
    assert leq_P(b, project_XM(b, (1, 1, 0)), project_XM(b, (2, 0, 0)))
    assert leq_P(b, project_XM(b, (2, 0, 0)), project_XM(b, (2, 0, 0)))
    assert not leq_P(b, project_XM(b, (2, 0, 0)), project_XM(b, (1, 1, 0)))
    with pytest.raises(LeviMismatch):
        leq_P(b, project_XM(levi(GL3, [0]), (1, 0, 0)), project_XM(b, (1, 0, 0)))


def test_leq_P_against_partial_sums():
    b = levi(GL3, [])
    rng = random.Random(4)
    for _ in range(300):
        x, y = vec(rng, 3), vec(rng, 3)
        assert leq_P(b, project_XM(b, x), project_XM(b, y)) == gl_dominance(x, y)


def test_leq_P_parabolic_gl3():
    # P with Levi GL2 x GL1: compare block sums (a+b, c)
    lv = levi(GL3, [0])
    rng = random.Random(6)
    for _ in range(300):
        x, y = vec(rng, 3), vec(rng, 3)
        want = sum(x) == sum(y) and y[2] <= x[2]
        assert leq_P(lv, project_XM(lv, x), project_XM(lv, y)) == want


def test_leq_P_YM_split_matches_leq_P():
    sid = validate_sigma(GL3)
    rng = random.Random(8)
    for sub in ([], [0], [1]):
        lv = levi(GL3, sub)
        for _ in range(200):
            x, y = vec(rng, 3), vec(rng, 3)
            assert leq_P_YM(lv, sid, to_YM(lv, sid, x), to_YM(lv, sid, y)) == \
                leq_P(lv, project_XM(lv, x), project_XM(lv, y))


def test_leq_P_YM_folded_example():
    t = levi(A2, [])
    a = to_YM(t, FOLD, (1, 0))
    b = to_YM(t, FOLD, (1, 1))
    assert leq_P_YM(t, FOLD, a, b)
    assert not leq_P_YM(t, FOLD, b, a)
    assert leq_P_YM(t, FOLD, a, a)


def test_in_YM_plus():
    sid = validate_sigma(GL3)
    lv = levi(GL3, [0])
    assert in_YM_plus(lv, sid, to_YM(lv, sid, (1, 1, 0)))
    assert not in_YM_plus(lv, sid, to_YM(lv, sid, (0, 0, 0)))
    assert not in_YM_plus(lv, sid, to_YM(lv, sid, (0, 0, 1)))
    g = levi(GL3, [0, 1])
    assert in_YM_plus(g, sid, to_YM(g, sid, (0, 0, 0)))


def test_flat():
    sid = validate_sigma(A2)
    assert flat(sid, (3, -1)) == (3, -1)
    assert flat(FOLD, (1, 0)) == (Fraction(1, 2), Fraction(1, 2))
    rng = random.Random(0)
    for _ in range(50):
        x = vec(rng, 2)
        f = flat(FOLD, x)
        assert flat(FOLD, f) == f
        assert FOLD.apply(f) == f


def test_pr_M():
    sid = validate_sigma(GL3)
    assert pr_M(levi(GL3, [0]), sid, (1, 0, 0)) == (Fraction(1, 2), Fraction(1, 2), 0)
    t = levi(GL3, [])
    assert pr_M(t, sid, (1, 2, 3)) == (1, 2, 3)
    rng = random.Random(2)
    for sub in ([0], [1], [0, 1]):
        lv = levi(GL3, sub)
        for _ in range(20):
            a = vec(rng, 3)
            p = pr_M(lv, sid, a)
            assert pr_M(lv, sid, p) == p


def test_pr_M_folded_a3():
    d = build_root_datum("A", 3, "sc")
    s = validate_sigma(d, [2, 1, 0])
    lv = levi(d, [1])
    x = flat(s, (2, 1, 0))
    p = pr_M(lv, s, x)
    assert s.apply(p) == p
    assert pr_M(lv, s, p) == p


def test_reform_examples():
    sid = validate_sigma(GL3)
    t = levi(GL3, [])
    r = reform_equiv_report(t, sid, (2, 0, 0), to_YM(t, sid, (1, 1, 0)))
    assert r.cond1 and r.cond2 and r.cond_dom and r.agree
    r = reform_equiv_report(t, sid, (2, 0, 0), to_YM(t, sid, (2, 0, 0)))
    assert r.cond1 and r.cond2
    r = reform_equiv_report(t, sid, (2, 0, 0), to_YM(t, sid, (3, 0, -1)))
    assert not r.cond1 and r.agree
    with pytest.raises(NotDominant):
        reform_equiv_report(t, sid, (0, 2, 0), to_YM(t, sid, (1, 1, 0)))


DATA = [(build_root_datum("A", 2, "sc"), None), (build_root_datum("A", 2, "sc"), [1, 0]),
        (build_root_datum("C", 2, "sc"), None), (build_root_datum("GL", 3), [1, 0]),
        (build_root_datum("A", 3, "ad"), [2, 1, 0])]


@pytest.mark.parametrize("datum,perm", DATA)
def test_complication_box(datum, perm):
    """Nonnegative combinations of N-coroots vanishing in Y_M are zero in X_M."""
    sigma = validate_sigma(datum, perm)
    for lv in sigma_stable_levis(datum, sigma):
        comp = lv.complement_simple
        zero_x = project_XM(lv, (0,) * datum.rank_X)
        zero_y = to_YM(lv, sigma, (0,) * datum.rank_X)
        for cs in itertools.product(range(4), repeat=len(comp)):
            x = [0] * datum.rank_X
            for c, i in zip(cs, comp):
                x = [a + c * b for a, b in zip(x, datum.simple_coroots[i])]
            if to_YM(lv, sigma, x) == zero_y:
                assert project_XM(lv, x) == zero_x
                assert not any(cs)


@pytest.mark.parametrize("datum,perm", DATA)
def test_lemma_po(datum, perm):
    sigma = validate_sigma(datum, perm)
    rng = random.Random(9)
    zero = (0,) * datum.rank_X
    for lv in sigma_stable_levis(datum, sigma):
        y0 = to_YM(lv, sigma, zero)
        for _ in range(60):
            nu = to_YM(lv, sigma, vec(rng, datum.rank_X, 2))
            lhs = leq_P_YM(lv, sigma, y0, nu)
            rhs = real_leq(datum, zero, abar(lv, sigma, nu.rep)) and not any(
                any(p) for p in to_YG(datum, sigma, nu.rep))
            assert lhs == rhs


@pytest.mark.parametrize("datum,perm", DATA)
def test_lemma_dom(datum, perm):
    sigma = validate_sigma(datum, perm)
    rng = random.Random(12)
    for lv in sigma_stable_levis(datum, sigma):
        for _ in range(40):
            x = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(datum.rank_X))
            x = _dominant_real(datum, x)
            xf = flat(sigma, x)
            pm = pr_M(lv, sigma, xf)
            assert real_leq(datum, pm, xf)
            y = abar(lv, sigma, vec(rng, datum.rank_X, 3))
            assert real_leq(datum, y, xf) == real_leq(datum, y, pm)


def _dominant_real(datum, x):
    # reflect until dominant; rational vectors are fine for the formula
    x = list(x)
    while True:
        for a, c in zip(datum.simple_roots, datum.simple_coroots):
            p = sum(u * v for u, v in zip(a, x))
            if p < 0:
                x = [u - p * v for u, v in zip(x, c)]
                break
        else:
            return tuple(x)


@pytest.mark.parametrize("datum,perm", DATA)
def test_orders_are_partial_orders(datum, perm):
    sigma = validate_sigma(datum, perm)
    rng = random.Random(13)
    for lv in sigma_stable_levis(datum, sigma):
        pts = list({to_YM(lv, sigma, vec(rng, datum.rank_X, 1)) for _ in range(14)})
        le = {(a, b): leq_P_YM(lv, sigma, a, b) for a in pts for b in pts}
        for a in pts:
            assert le[a, a]
        for a, b in itertools.permutations(pts, 2):
            assert not (le[a, b] and le[b, a])
        for a, b, c in itertools.permutations(pts, 3):
            if le[a, b] and le[b, c]:
                assert le[a, c]
