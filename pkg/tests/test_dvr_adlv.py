import pytest

from adlsets import BudgetExceeded
from adlsets.dvr import LaurentMatrix, adlv_enumerate, cartan_invariants, hodge_newton_verify, parse_b
from adlsets.dvr.adlv import enumerate_hnf, hnf_key, kappa_rep, twisted
from adlsets.dvr.suites import SUPERBASIC_2, adlv_suite

IDENT = [["1", "0"], ["0", "1"]]
DIAG = [["t", "0"], ["0", "1"]]
GL3_BLOCK = [["0", "1", "0"], ["t", "0", "0"], ["0", "0", "1"]]


def brute(mu, b, radius):
    """Every column normal form with elementary divisors in the window, tested one by one."""
    want = tuple(sorted(mu, reverse=True))
    out = set()
    for x in enumerate_hnf(b.field, b.n, radius):
        if any(abs(c) > radius for c in cartan_invariants(x)):
            continue
        if cartan_invariants(twisted(x, b)) == want:
            out.add(hnf_key(x))
    return out


def test_identity_is_empty():
    for s in (1, 2):
        r = adlv_enumerate((1, 0), parse_b(IDENT, 2, s), radius=2)
        assert not r.nonempty
        assert "within" in r.qualifier()


def test_superbasic_standard_lattice():
    b = parse_b(SUPERBASIC_2, 2, 1)
    assert cartan_invariants(b) == (1, 0)
    r = adlv_enumerate((1, 0), b, radius=2)
    assert r.nonempty
    one = LaurentMatrix.identity(b.field, 2)
    assert hnf_key(one) in r.classes


@pytest.mark.parametrize("rows,mu,s", [(DIAG, (1, 0), 1), (DIAG, (1, 0), 2), (SUPERBASIC_2, (1, 0), 1),
                                       (IDENT, (1, -1), 1), ([["1", "t^-1"], ["0", "t"]], (1, 0), 1)])
def test_block_recursion_matches_brute_force(rows, mu, s):
    b = parse_b(rows, 2, s)
    fast = adlv_enumerate(mu, b, radius=2)
    assert set(fast.classes) == brute(mu, b, 2)


def test_block_recursion_gl3_radius1():
    b = parse_b(GL3_BLOCK, 2, 1)
    fast = adlv_enumerate((1, 0, 0), b, radius=1)
    assert set(fast.classes) == brute((1, 0, 0), b, 1)
    slow = adlv_enumerate((1, 0, 0), b, radius=1, use_blocks=False)
    assert set(slow.classes) == set(fast.classes)


def test_budget():
    with pytest.raises(BudgetExceeded):
        adlv_enumerate((1, 0), parse_b(DIAG, 2, 2), radius=2, budget=3)


def test_kappa_rep():
    # block determinant valuations, written as a coweight
    assert kappa_rep(parse_b(GL3_BLOCK, 2, 1), (2, 1)) == (1, 0, 0)
    assert kappa_rep(parse_b(DIAG, 2, 1), (1, 1)) == (1, 0)


def test_hodge_newton_gl2_torus():
    for s in (1, 2):
        r = hodge_newton_verify((1, 0), parse_b(DIAG, 2, s), (1, 1), radius=2)
        assert r.status == "equal"
        assert r.mazur_cross_check


def test_hodge_newton_gl3_block():
    r = hodge_newton_verify((1, 0, 0), parse_b(GL3_BLOCK, 2, 1), (2, 1), radius=2)
    assert r.status == "equal"


def test_hodge_newton_skipped():
    # kappa_T(diag(1, t)) = (0, 1) is not mu = (1, 0)
    r = hodge_newton_verify((1, 0), parse_b([["1", "0"], ["0", "t"]], 2, 1), (1, 1), radius=1)
    assert r.status == "skipped"
    assert r.to_json()["status"] == "skipped"


def test_reference_suite():
    assert adlv_suite(max_s=1).passed
