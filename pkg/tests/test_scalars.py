from fractions import Fraction

from hypothesis import given, settings, strategies as st

from metakit.scalars import CycloSum, VPoly, XPoly, cyclotomic_poly

vpolys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=4).map(VPoly)


def test_q_is_v_squared():
    assert VPoly.q(1) == VPoly.v(2)
    assert VPoly.q(Fraction(1, 2)) == VPoly.v(1)
    assert VPoly.q(2).at_q(7) == 49
    assert VPoly.v(-2).at_q(7) == Fraction(1, 7)


def test_monomial_inverse():
    x = VPoly.v(3, 2)
    assert x * x.inverse() == VPoly.const(1)


@given(vpolys, vpolys, vpolys)
@settings(max_examples=100)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == VPoly()


@given(st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4),
       st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4))
def test_evaluation_is_a_ring_map(a, b):
    a = VPoly({2 * k: c for k, c in a.items()})
    b = VPoly({2 * k: c for k, c in b.items()})
    assert (a * b).at_q(5) == a.at_q(5) * b.at_q(5)
    assert (a + b).at_q(5) == a.at_q(5) + b.at_q(5)


def test_cyclotomic():
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)


def test_cyclo_sum_rational_value():
    s = CycloSum(3)
    for k in range(3):
        s.add(k, 5)
    assert s.rational_value() == VPoly()
    s.add(0, 2)
    assert s.rational_value() == VPoly.const(2)
    t = CycloSum(3)
    t.add(1, 1)
    assert t.rational_value() is None


def test_xpoly_product():
    one = XPoly({0: 1})
    x = XPoly.monomial(1)
    assert (one - x) * (one + x) == one - x * x
