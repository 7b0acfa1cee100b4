import pytest
from hypothesis import given, settings, strategies as st

from vermacat.diagram import (Cross, DiagramElement, DiagramWord, Dot, WhiteDot, act_on_chain, act_poly, basis_dim,
                              bridge_chain, check_confluence, check_relations, defining_relations,
                              divided_difference_holds, degree_of, format_terms, letters_of, multiply, normalize,
                              parse_word, poly_ring, rank_of_action)


def nf(text, n, m=0):
    return format_terms(normalize(parse_word(text, n, m)))


def term_set(s):
    return set(s.replace(" - ", " + -").split(" + "))


def test_letter_degrees():
    for m in range(3):
        assert tuple(degree_of(DiagramWord(2, m, (Dot(1),)))) == (2, 0, 0)
    assert tuple(degree_of(DiagramWord(1, 0, (WhiteDot(1),)))) == (-2, 2, 1)
    for m in range(3):
        assert tuple(degree_of(DiagramWord(2, m, (Cross(1), Cross(1))))) == (-4, 0, 0)


def test_nilhecke_examples():
    assert nf("d1 x1", 2) == "x2 d1 + 1"
    assert nf("w1 w1", 2) == "0"
    assert nf("d1 d1", 2) == "0"
    assert nf("", 2) == "1"
    assert term_set(nf("d1 w1", 2)) == {"w1 d1", "x1 w2 d1", "-x2 w2 d1", "-w2"}


def test_dots_commute_with_white_dots():
    assert nf("x1 w1", 2) == nf("w1 x1", 2)


def test_different_labels_multiply_to_zero():
    p = multiply(parse_word("x1", 2, 0), parse_word("x1", 2, 1))
    assert p.terms == {}
    with pytest.raises(ValueError):
        multiply(parse_word("x1", 2), parse_word("x1", 3))


def test_bad_generators():
    with pytest.raises(ValueError):
        parse_word("d2", 2)
    with pytest.raises(ValueError):
        parse_word("y1", 2)


def test_polynomial_action_examples():
    R = poly_ring(2, 0)
    assert act_poly(parse_word("d1", 2), R.gen("x1") * R.gen("x2")).is_zero()
    assert act_poly(parse_word("d1", 2), R.gen("w1")) == -R.gen("w2")
    p = R.gen("x1") ** 2 + R.gen("w2")
    assert act_poly(parse_word("", 2), p) == p


def test_basis_dimension_examples():
    assert basis_dim(1, 0, (2, 0)) == 1
    assert basis_dim(2, 0, (-2, 0)) == 1
    assert basis_dim(0, 0, (0, 0)) == 1
    assert basis_dim(0, 0, (2, 0)) == 0
    assert basis_dim(0, 0, (-2, 2)) == 0


def test_chain_action_examples():
    ch = bridge_chain(2, 0)
    A, B = ch.factors[0].ring, ch.factors[1].ring
    unit = ch.pure(A.one(), B.one())
    assert act_on_chain(Dot(1), unit, 2, 0) == ch.pure(A.gen("xi"), B.one())
    assert act_on_chain(Cross(1), ch.pure(A.gen("xi"), B.one()), 2, 0) == unit


def words(n, max_len=4):
    return st.lists(st.sampled_from(letters_of(n)), max_size=max_len).map(lambda ls: DiagramWord(n, 0, tuple(ls)))


@st.composite
def polys(draw, n=2):
    R = poly_ring(n, 0)
    gens = [R.gen(g.name) for g in R.gens]
    out = R.zero()
    for _ in range(draw(st.integers(1, 3))):
        mono = R.const(draw(st.integers(-2, 2)))
        for g in draw(st.lists(st.sampled_from(gens), max_size=3)):
            mono = mono * g
        out = out + mono
    return out


@given(words(2), words(2), words(2))
@settings(max_examples=60, deadline=None)
def test_multiplication_is_associative(a, b, c):
    assert multiply(multiply(a, b), c).terms == multiply(a, multiply(b, c)).terms


@given(words(3), words(3))
@settings(max_examples=60, deadline=None)
def test_normal_form_is_strategy_independent(a, b):
    w = DiagramWord(3, 0, a.letters + b.letters)
    assert format_terms(normalize(w, "leftmost")) == format_terms(normalize(w, "rightmost"))


@given(words(2), words(2), polys())
@settings(max_examples=60, deadline=None)
def test_polynomial_action_is_a_representation(a, b, p):
    assert act_poly(multiply(a, b), p) == act_poly(a, act_poly(b, p))
    assert act_poly(DiagramElement.of(a), p) == act_poly(a, p)


@given(polys())
@settings(max_examples=60, deadline=None)
def test_divided_difference_identity(p):
    assert divided_difference_holds(2, 0, 1, p)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_confluence_short_words(n):
    ok, word, count = check_confluence(n, 4)
    assert ok, word
    assert count > 0


@pytest.mark.parametrize("n,m", [(1, 0), (2, 0), (2, 1), (3, 0)])
def test_defining_relations(n, m):
    assert defining_relations(n)
    ok, why = check_relations(n, m)
    assert ok, why


def test_faithfulness_small_window():
    for n in (1, 2):
        for q in range(-4, 5):
            for l in (0, 2):
                assert basis_dim(n, 0, (q, l)) == rank_of_action(n, 0, (q, l))


def test_false_relation_is_rejected(monkeypatch):
    import vermacat.diagram as D
    real = D.defining_relations
    bogus = ("d1 x1 = x1 d1", [(1, (Cross(1), Dot(1)))], [(1, (Dot(1), Cross(1)))])
    monkeypatch.setattr(D, "defining_relations", lambda n: real(n) + [bogus])
    ok, why = D.check_relations(2, 0)
    assert not ok and "d1 x1" in why
