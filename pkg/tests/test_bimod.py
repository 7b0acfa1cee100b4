import pytest
from hypothesis import given, settings, strategies as st

from vermacat import bimod
from vermacat.bimod import (DEFAULT_WINDOW, RELATIONS, down_side, eta_one, map_iota, map_pi, oracle_check,
                            tensor_reduce, up_side, verify, verify_all)
from vermacat.core import SuperPoly
from vermacat.omega import flag, grassmann, phi_star, psi_star


def _monomials(ring, qmax=6, lmax=2):
    out = []
    for l in range(0, lmax + 1, 2):
        for q in range(-8, qmax + 1):
            out.extend(SuperPoly(ring, {key: 1}) for key in ring.monomials(q, l))
    return out


F1 = flag(1).ring
MONS1 = _monomials(F1)
MIDDLE = _monomials(grassmann(2).ring, qmax=4)
OUTER = _monomials(grassmann(1).ring, qmax=4)


def test_unit_tensor_is_the_basis_element_zero():
    t = tensor_reduce("up", 1, F1.one(), F1.one())
    assert t.coeffs == {(0, (0, 0)): grassmann(1).ring.one()}


def test_xi_squared_normal_form():
    # frozen from the per-bidegree linear-algebra model, which agrees on this bidegree
    R = grassmann(1).ring
    x1 = R.gen("x1")
    t = tensor_reduce("up", 1, F1.gen("xi") ** 2, F1.one())
    assert t.coeffs == {(0, (1, 0)): -x1, (1, (0, 0)): x1, (1, (1, 0)): R.one()}
    assert oracle_check(up_side(1), (4, 4, 0, 0)).passed


def test_eta_of_one():
    R = grassmann(1).ring
    assert eta_one(1).coeffs == {(0, (0, 0)): -R.gen("x1"), (1, (0, 0)): R.one()}


@given(st.sampled_from(MONS1), st.sampled_from(MONS1), st.sampled_from(MIDDLE))
@settings(max_examples=60, deadline=None)
def test_tensor_is_balanced_over_the_middle_ring(a, b, r):
    pr = psi_star(1)(r)
    assert tensor_reduce("up", 1, a * pr, b) == tensor_reduce("up", 1, a, pr * b)


@given(st.sampled_from(MONS1), st.sampled_from(MONS1), st.sampled_from(OUTER), st.sampled_from(OUTER))
@settings(max_examples=60, deadline=None)
def test_tensor_is_a_bimodule(a, b, c, d):
    t = tensor_reduce("up", 1, a, b)
    assert t.left_mul(c) == tensor_reduce("up", 1, phi_star(1)(c) * a, b)
    assert t.right_mul(d) == tensor_reduce("up", 1, a, b * phi_star(1)(d))


@given(st.sampled_from(MONS1), st.sampled_from(MONS1), st.sampled_from(MONS1), st.integers(-3, 3))
@settings(max_examples=40, deadline=None)
def test_tensor_is_bilinear(a, b, c, s):
    assert tensor_reduce("up", 1, a.scale(s) + c, b) == tensor_reduce("up", 1, a, b).scale(s) + \
        tensor_reduce("up", 1, c, b)


def test_pi_after_iota_is_identity_example():
    R = bimod.omega_xi(1).ring
    p = R.gen("x1") * R.gen("xi") + R.gen("s1")
    assert map_pi(1, map_iota(1, p)) == p


def test_verify_examples():
    assert verify("zigzag_left", 1, (-12, 10, 0, 6)).passed
    assert verify("ses_gdim", 2, (-10, 10, 0, 4)).passed
    assert verify("pi_iota_id", 0, (-4, 4, 0, 2)).passed


@pytest.mark.parametrize("k", [0, 1])
def test_battery_small_k(k):
    reports = verify_all(k, DEFAULT_WINDOW)
    assert reports and all(r.passed for r in reports), [r.to_json() for r in reports if not r.passed]


def test_broken_counit_is_detected(monkeypatch):
    monkeypatch.setattr(bimod, "map_epsilon", lambda k, t: grassmann(k).ring.zero())
    r = verify("zigzag_left", 1, (-4, 4, 0, 2))
    assert r.status == "fail" and r.failing_bidegree is not None
    assert r.to_json()["failing_bidegree"] == list(r.failing_bidegree)


def test_unknown_relation_and_negative_k():
    with pytest.raises(ValueError):
        verify("no_such_relation", 1)
    with pytest.raises(ValueError):
        verify("zigzag_left", -1)
    with pytest.raises(ValueError):
        down_side(0)


def test_relation_names():
    assert "zigzag_left" in RELATIONS and "ses_gdim" in RELATIONS and len(set(RELATIONS)) == len(RELATIONS)


def test_oracle_small():
    assert oracle_check(up_side(0)).passed
    assert oracle_check(down_side(1), (-8, 8, 0, 4)).passed


@pytest.mark.parametrize("k", [2, 3])
def test_sweet_decompositions(k):
    # the k = 3 left decomposition is slow on the default window, so both use a smaller one
    for rel in ("sweet_decomp_left", "sweet_decomp_right"):
        r = verify(rel, k, (-6, 6, 0, 4))
        assert r.passed and r.checked > 0, r.to_json()
