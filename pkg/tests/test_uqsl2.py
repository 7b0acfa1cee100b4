import pytest
from hypothesis import given, settings, strategies as st

from vermacat.core import PI
from vermacat.uqsl2 import (QLaurent, VermaVector, apply_word, brace, check_collapsed, check_dual_basis,
                            check_dual_pairing, check_evaluation, check_groth, check_shapovalov, check_sl2_relations,
                            dual_normalization, eval_at, hom_series, qbinom, qbracket_lambda, qfact, qint, shapovalov,
                            shapovalov_closed, shapovalov_recursive, shapovalov_str, v_layer_character, verma_apply,
                            weight)

LAM = QLaurent({(0, 1): 1})
Q = QLaurent({(1, 0): 1})


def mono(qe, le=0, c=1):
    return QLaurent({(qe, le): c})


def test_quantum_integers():
    assert qint(2) == Q + mono(-1)
    assert str(qint(2)) == "q + q^-1"
    assert qfact(3) == qint(3) * qint(2)
    assert qfact(3) == mono(3) + mono(1, 0, 2) + mono(-1, 0, 2) + mono(-3)
    assert qint(0).is_zero()
    assert qint(-2) == -qint(2)
    assert brace(3) == mono(4) + mono(2) + mono(0)


def test_lambda_bracket():
    assert qbracket_lambda(0) == QLaurent({(0, 1): 1, (0, -1): -1}, 1)
    assert str(qbracket_lambda(0)) == "(l - l^-1)/(q-q^-1)"


@given(st.integers(-6, 6), st.integers(-6, 6))
@settings(max_examples=60, deadline=None)
def test_quantum_integer_identities(a, b):
    # [a+b] = q^b [a] + q^{-a} [b]
    assert qint(a + b) == mono(b) * qint(a) + mono(-a) * qint(b)


@given(st.integers(1, 7), st.integers(0, 7))
@settings(max_examples=40, deadline=None)
def test_qbinom_factorial_identity(a, b):
    if b > a:
        return
    assert qbinom(a, b) * qfact(b) * qfact(a - b) == qfact(a)


def test_verma_examples():
    m0 = VermaVector.basis_vector(0)
    assert verma_apply("F", m0) == VermaVector.basis_vector(1)
    assert verma_apply("E", m0) == m0.scale(0)
    d1 = VermaVector.basis_vector(1, "dual", 0)
    assert verma_apply("E", d1) == VermaVector.basis_vector(0, "dual", 0).scale(mono(1, -1))


@given(st.integers(0, 5), st.sampled_from(["canonical", "primed", "dual"]), st.integers(-1, 0))
@settings(max_examples=40, deadline=None)
def test_commutator_on_basis_vectors(i, basis, shift):
    v = VermaVector.basis_vector(i, basis, shift)
    lhs = apply_word("EF", v) - apply_word("FE", v)
    # weight exponent of the i-th vector is shift - 2i
    assert lhs == v.scale(qbracket_lambda(shift - 2 * i))
    assert weight(i, shift) == mono(shift - 2 * i, 1)


def test_relation_batteries():
    assert check_sl2_relations(5) == []
    assert check_sl2_relations(5, -1) == []
    assert check_dual_basis(5) == []
    assert check_dual_pairing(4) == []


def test_shapovalov_examples():
    assert shapovalov(0, 0) == QLaurent.of(1)
    assert shapovalov(1, 1) == LAM * mono(-2) * qbracket_lambda(-1)
    assert shapovalov_str(1) == "l*q^-2*[l,-1]"
    assert shapovalov(1, 0).is_zero()


@pytest.mark.parametrize("n", range(0, 5))
def test_shapovalov_recursion_matches_closed_form(n):
    assert shapovalov_recursive(n, n) == shapovalov_closed(n, n)


def test_shapovalov_from_hom_series():
    assert check_shapovalov() == []
    s = hom_series(1, 1, (-10, 10, 0, 6))
    assert s.at_pi(-1)[(0, 0)] == 1 and s.at_pi(-1)[(0, 2)] == -1


def test_evaluation_examples():
    assert eval_at(1, qbracket_lambda(0)) == qint(2)
    assert eval_at(1, qbracket_lambda(0)) == Q + mono(-1)
    assert eval_at(1, mono(-2, 1), universal=False) == mono(-1)


@pytest.mark.parametrize("n", range(0, 3))
def test_dual_normalization_degenerates(n):
    dual_normalization(n).evaluate(n)
    with pytest.raises(ZeroDivisionError):
        dual_normalization(n + 1).evaluate(n)


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_evaluation_consistency(n):
    assert check_evaluation(n) == []


def test_commutator_display_at_weight_zero():
    display = QLaurent({(-1, 1): -PI, (1, -1): -1}, 1)
    assert display.at_pi(-1) == qbracket_lambda(-1)


@pytest.mark.parametrize("k", [0, 1])
def test_grothendieck_small(k):
    reports = check_groth(k)
    assert len(reports) == 12
    assert all(r.passed for r in reports), [r.to_json() for r in reports if not r.passed]


def test_collapsed_and_layers():
    for n in range(0, 3):
        assert check_collapsed(n) == []
    assert v_layer_character(2) == {2: 1, 0: 1, -2: 1}


def test_bar_involution():
    x = LAM * mono(-2) * qbracket_lambda(-1)
    assert x.bar().bar() == x
    assert qint(3).bar() == qint(3)
