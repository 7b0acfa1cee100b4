from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from vermacat.core import GradedSeries, PiScalar
from vermacat.dg import (CYCLO_WINDOW, DiagramDifferential, Differential, check_d_squared, check_diagram_leibniz,
                         check_ef_homology, check_intertwine, check_qih, diagram_d_squared, diagram_homology,
                         ef_homology_series, ef_identity_sides, gaussian_binomial, grassmannian_gdim, homology,
                         make_dn, make_dN_diagram, nhN_oracle, qih_window_complete, quantum_integer, table_series,
                         table_to_json)
from vermacat.omega import grassmann

W = (-4, 16, 0, 4)

# q-degree -> dimension of the homology of (A_n(N+1), d_N), from the nh_n^N spanning-set oracle
CYCLOTOMIC = {
    (1, 1): {0: 1},
    (1, 2): {0: 1, 2: 1},
    (1, 3): {0: 1, 2: 1, 4: 1},
    (2, 1): {},
    (2, 2): {-2: 1, 0: 2, 2: 1},
}


def by_q(table):
    out = {}
    for (q, l, p), dim in table.items():
        out[q] = out.get(q, 0) + dim
    return out


def test_d_squared_examples():
    assert check_d_squared(make_dn("omega", 2, 2), W)[0]
    assert diagram_d_squared(make_dN_diagram(2, 2))
    R = grassmann(2).ring
    zero = Differential(R, {}, (0, -2))
    assert check_d_squared(zero, W) == (True, None)


def test_d_squared_catches_a_bad_differential():
    # on Q[x] (x) Lambda(s1, s2) with d(s1) = x, d(s2) = s1 is not a differential
    R = grassmann(2).ring
    with pytest.raises(ValueError):
        Differential(R, {"x1": R.gen("s1")}, (0, 0))
    bad = Differential(R, {"s1": R.gen("x1"), "s2": R.gen("x1") * R.gen("s1")}, (0, 0))
    ok, why = check_d_squared(bad)
    assert not ok and "s2" in why


def test_homology_examples():
    assert homology(make_dn("omega", 1, 1), W) == {(0, 0, 0): 1}
    assert by_q(homology(make_dn("omega", 1, 2), W)) == {0: 1, 2: 1}
    assert homology(make_dn("omega", 1, 0), W) == {}


@pytest.mark.parametrize("n", range(1, 6))
def test_koszul_homology_of_one_variable(n):
    # d(s) = Y_n = (-x)^n, so H = Q[x]/(x^n)
    H = homology(make_dn("omega", 1, n), (-4, 2 * n + 4, 0, 4))
    assert H == {(2 * j, 0, 0): 1 for j in range(n)}


def test_grassmannian_examples():
    win = (-4, 12, 0, 2)
    assert grassmannian_gdim(1, 2, win) == GradedSeries(win, {(0, 0): 1, (2, 0): 1})
    assert grassmannian_gdim(1, 3, win) == GradedSeries(win, {(0, 0): 1, (2, 0): 1, (4, 0): 1})
    for n in range(4):
        assert grassmannian_gdim(0, n, win) == GradedSeries(win, {(0, 0): PiScalar(1)})
    assert grassmannian_gdim(3, 2, win) == GradedSeries(win, {})


@given(st.integers(0, 8), st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_gaussian_binomial_identities(n, k):
    g = gaussian_binomial(n, k)
    if k > n:
        assert g == {}
        return
    assert sum(g.values()) == comb(n, k)
    top = 2 * k * (n - k)
    assert g == {top - e: c for e, c in g.items()}
    if 0 < k < n:
        a, b = gaussian_binomial(n - 1, k - 1), gaussian_binomial(n - 1, k)
        pascal = dict(a)
        for e, c in b.items():
            pascal[e + 2 * k] = pascal.get(e + 2 * k, 0) + c
        assert g == pascal


def test_quantum_integer():
    assert quantum_integer(2) == {1: 1, -1: 1}
    assert quantum_integer(0) == {}
    assert quantum_integer(-1) == {0: -1}


@pytest.mark.parametrize("k,n", [(1, 2), (2, 3)])
def test_qih_examples(k, n):
    r = check_qih(k, n)
    assert r.passed, r.detail
    assert r.to_json()["status"] == "pass"


def test_qih_top_weight_and_acyclic():
    assert by_q(homology(make_dn("omega", 2, 2), W)) == {0: 1}
    assert homology(make_dn("omega", 2, 1), W) == {}
    assert check_qih(2, 1).passed


def test_qih_flag_host():
    assert check_qih(1, 3, host="flag").passed


def test_window_completeness():
    assert qih_window_complete(2, 4, (-2, 8, 0, 0))
    assert not qih_window_complete(2, 4, (-2, 6, 0, 0))
    assert not qih_window_complete(1, 2, (1, 8, 0, 0))


def test_intertwining():
    for k, n in ((0, 1), (1, 2), (2, 3)):
        assert check_intertwine(k, n) == (True, None)


def test_commutator_middle_weight():
    # k = 1, n = 2: [n - 2k] = 0, so both homologies agree after the shift
    hu, hd = ef_homology_series(1, 2)
    lhs, rhs, common = ef_identity_sides(1, 2, hu, hd, (-16, 24, 0, 4))
    assert rhs == GradedSeries(common, {})
    assert lhs == rhs


def test_commutator_excess_one_copy():
    # k = 1, n = 1: the down side carries one more copy than the up side
    hu, hd = ef_homology_series(1, 1)
    assert by_q({(q, l, 0): c.even for (q, l), c in (hu - hd).coeffs.items()}) == {0: -1}
    assert check_ef_homology(1, 1).passed


def test_commutator_small():
    for k, n in ((0, 0), (0, 2), (1, 2), (2, 2)):
        r = check_ef_homology(k, n)
        assert r.passed, r.detail


@pytest.mark.parametrize("n,N", sorted(CYCLOTOMIC))
def test_cyclotomic_frozen(n, N):
    assert nhN_oracle(n, N, CYCLO_WINDOW) == CYCLOTOMIC[(n, N)]
    if n == 1:
        assert by_q(diagram_homology(make_dN_diagram(n, N), CYCLO_WINDOW)) == CYCLOTOMIC[(n, N)]


def test_cyclotomic_differential():
    d = make_dN_diagram(2, 1)
    assert isinstance(d, DiagramDifferential)
    assert check_diagram_leibniz(d, 2) == (True, None)


def test_table_helpers():
    t = {(2, 0, 0): 1, (0, 0, 0): 1}
    assert table_to_json(t) == [{"q": 0, "l": 0, "parity": 0, "dim": 1}, {"q": 2, "l": 0, "parity": 0, "dim": 1}]
    assert table_series(t, (-2, 4, 0, 0)) == GradedSeries((-2, 4, 0, 0), {(0, 0): 1, (2, 0): 1})
