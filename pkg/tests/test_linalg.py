from fractions import Fraction

from hypothesis import given, settings, strategies as st

from vermacat.linalg import ModRowSpace, RowSpace, complement_basis, independent, rank


def dense_rank(rows, cols):
    m = [[Fraction(r.get(c, 0)) for c in cols] for r in rows]
    rk = 0
    for j in range(len(cols)):
        piv = next((i for i in range(rk, len(m)) if m[i][j]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][j]:
                f = m[i][j] / m[rk][j]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


coeff = st.one_of(st.integers(-4, 4), st.fractions(min_value=-3, max_value=3, max_denominator=5))
vectors = st.lists(st.dictionaries(st.integers(0, 5), coeff, max_size=5), max_size=7)


@given(vectors)
@settings(max_examples=120, deadline=None)
def test_rank_matches_dense_elimination(vs):
    cols = sorted({c for v in vs for c in v})
    assert rank(vs) == dense_rank(vs, cols)


@given(vectors)
@settings(max_examples=80, deadline=None)
def test_express_reconstructs(vs):
    rs = RowSpace(track=True)
    for v in vs:
        rs.add(v)
    for v in vs:
        combo = rs.express(v)
        assert combo is not None
        total = {}
        for i, c in combo.items():
            for key, x in vs[i].items():
                total[key] = total.get(key, 0) + c * x
        assert {key: x for key, x in total.items() if x} == {key: Fraction(x) for key, x in v.items() if x}


@given(vectors)
@settings(max_examples=60, deadline=None)
def test_mod_p_rank_is_a_lower_bound(vs):
    ms = ModRowSpace()
    for v in vs:
        ms.add(v)
    assert ms.rank <= rank(vs)


def test_contains_and_reduce():
    rs = RowSpace()
    rs.add({0: 1, 1: 2})
    rs.add({1: 1, 2: 1})
    assert rs.contains({0: 2, 1: 5, 2: 1})
    assert not rs.contains({2: 1})
    assert rs.reduce({0: 1, 1: 2}) == {}


def test_independence_and_complement():
    assert independent([{0: 1}, {1: 1}])
    assert not independent([{0: 1}, {0: Fraction(1, 2)}])
    rs = RowSpace()
    rs.add({0: 1, 1: 1})
    assert complement_basis(rs, [("a", {0: 1, 1: 1}), ("b", {0: 1}), ("c", {1: 1})]) == ["b"]
