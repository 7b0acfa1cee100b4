from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vermacat.core import (PI, GenSpec, GradedSeries, PiScalar, Ring, RingHom, SuperPoly, apply_hom,
                           identity_hom, poly_mul, rational_series, render_series, series_from_ring)
from vermacat.omega import flag, grassmann, phi_star, psi_star

R2 = grassmann(2).ring


def gens(ring):
    return [ring.gen(g.name) for g in ring.gens]


@st.composite
def polys(draw, ring=R2, max_terms=4, max_deg=2):
    out = ring.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(st.integers(-3, 3))
        mono = ring.const(c)
        for g in draw(st.lists(st.sampled_from(gens(ring)), max_size=max_deg + 1)):
            mono = mono * g
        out = out + mono
    return out


def test_odd_generators_anticommute():
    s1, s2 = R2.gen("s1"), R2.gen("s2")
    assert str(s1 * s2) == "s1*s2"
    assert s2 * s1 == -(s1 * s2)
    assert (s1 * s1).is_zero()


def test_distributivity_example():
    x1, s1 = R2.gen("x1"), R2.gen("s1")
    assert (x1 + s1) * (x1 - s1) == x1 ** 2


def test_bidegrees():
    R3 = grassmann(3).ring
    assert R3.gen("x2").bidegree() == (4, 0, 0)
    assert R2.gen("s1").bidegree() == (-2, 2, 1)
    assert (R2.gen("x1") + R2.gen("s1")).bidegree() == "inhomogeneous"


def test_ring_mismatch_is_an_error():
    with pytest.raises(ValueError):
        grassmann(1).ring.gen("x1") * R2.gen("x1")


def test_hom_needs_every_generator():
    R1 = grassmann(1).ring
    with pytest.raises(ValueError):
        RingHom(R1, R2, {"x1": R2.gen("x1")})


def test_identity_hom():
    p = R2.gen("x1") * R2.gen("s2") + 3
    assert apply_hom(identity_hom(R2), p) == p


def test_phi_psi_examples():
    F = flag(1).ring
    assert apply_hom(phi_star(1), grassmann(1).ring.gen("x1")) == F.gen("x1")
    assert apply_hom(phi_star(1), grassmann(1).ring.gen("s1")) == F.gen("s1") + F.gen("xi") * F.gen("s2")
    assert apply_hom(psi_star(1), R2.gen("x2")) == F.gen("x1") * F.gen("xi")
    assert apply_hom(psi_star(1), R2.gen("s2")) == F.gen("s2")


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert poly_mul(a, b) == a * b


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_graded_commutativity(a, b):
    for da, pa in a.components().items():
        for db, pb in b.components().items():
            sign = -1 if da[2] == db[2] == 1 else 1
            assert pa * pb == (pb * pa).scale(sign)


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_homs_are_multiplicative(a, b):
    h = psi_star(1)
    assert apply_hom(h, a * b) == apply_hom(h, a) * apply_hom(h, b)
    assert apply_hom(h, a + b) == apply_hom(h, a) + apply_hom(h, b)


def test_series_of_omega1():
    s = series_from_ring(grassmann(1).ring, (-2, 4, 0, 2))
    # s1*x1^3 sits at (4, 2) and belongs to the window as well
    assert render_series(s) == "1 + q^2 + q^4 + pi*l^2*q^-2 + pi*l^2 + pi*l^2*q^2 + pi*l^2*q^4"


def test_series_of_empty_ring():
    assert render_series(series_from_ring(Ring([]), (-4, 4, 0, 4))) == "1"


def test_geometric_series():
    s = series_from_ring(Ring([GenSpec("xi", 2, 0, 0)]), (0, 8, 0, 0))
    assert {q: c.even for (q, l), c in s.coeffs.items()} == {0: 1, 2: 1, 4: 1, 6: 1, 8: 1}


def test_nonterminating_enumeration_is_an_error():
    with pytest.raises(ValueError):
        series_from_ring(Ring([GenSpec("z", 0, 0, 0)]), (0, 4, 0, 0))


def test_series_arithmetic():
    a = GradedSeries.polynomial({(0, 0): 1, (2, 0): 1})
    b = GradedSeries.polynomial({(0, 0): 1, (2, 0): -1})
    assert str(a * b) == "1 - q^4"
    f = GradedSeries.polynomial({(0, 0): 3, (2, 2): PI})
    assert (f.scale(PI)).scale(PI) == f


def test_pi_squared_is_one():
    assert PI * PI == PiScalar(1)
    assert PiScalar(2, 3).at_pi(-1) == -1
    assert PiScalar(2, 3).at_pi(1) == 5


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(-1, 1))
@settings(max_examples=30, deadline=None)
def test_rational_series_matches_enumeration(qdegs, odd_shift):
    # a polynomial ring on even generators of the given degrees and one odd generator
    ring = Ring([GenSpec(f"z{i}", 2 * d, 0, 0) for i, d in enumerate(qdegs)] + [GenSpec("o", 2 * odd_shift, 2, 1)])
    W = (-4, 12, 0, 4)
    num = {(0, 0): PiScalar(1), (2 * odd_shift, 2): PI}
    assert series_from_ring(ring, W) == rational_series(num, [2 * d for d in qdegs], W)


def test_coefficients_are_exact():
    p = R2.gen("x1").scale(Fraction(1, 3)) * 3
    assert p == R2.gen("x1")
    with pytest.raises(TypeError):
        R2.gen("x1").scale(0.5)
