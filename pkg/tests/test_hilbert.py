import random

import pytest
from hypothesis import given, settings, strategies as st

from metakit.arith import LaurentNumber, MuElement, parse_laurent, prime_field
from metakit.hilbert import hilbert_suite, hilbert_symbol, random_nonzero, tame_residue, tame_symbol

F7 = prime_field(7)
F13 = prime_field(13)


def test_worked_example():
    s = parse_laurent("t", F7)
    t = parse_laurent("3 + O(t)", F7)
    assert hilbert_symbol(s, t, 3) == MuElement(3, 2)
    assert hilbert_symbol(s, t, 3).value(F7) == 4


def test_residue_formula_by_hand():
    # (t^1 * 2, t^2 * 5) in F_7: (-1)^2 * 2^2 * 5^-1 = 4 * 3 = 12 = 5
    assert tame_residue(1, 2, 2, 5, F7) == 5
    assert tame_symbol(1, 2, 2, 5, 6, F7) == MuElement(6, F7.log(5))


def test_only_leading_terms_matter():
    a = parse_laurent("2*t^-1 + 5 + t + O(t^3)", F7)
    b = parse_laurent("2*t^-1 + O(t^0)", F7)
    c = parse_laurent("3*t^2 + 6*t^3", F7)
    assert hilbert_symbol(a, c, 3) == hilbert_symbol(b, c, 3)


def test_zero_is_rejected():
    with pytest.raises(ValueError):
        hilbert_symbol(LaurentNumber.zero(F7), LaurentNumber.const(F7, 1), 3)


@pytest.mark.parametrize("q,m", [(7, 3), (13, 2), (13, 3), (13, 6)])
def test_property_suite(q, m):
    res = hilbert_suite(q, m, trials=200, seed=1)
    assert all(v["ok"] for v in res.values()), res


@st.composite
def nonzero(draw, fld=F13):
    return random_nonzero(random.Random(draw(st.integers(0, 10**6))), fld)


@given(nonzero(), nonzero(), nonzero())
@settings(max_examples=200, deadline=None)
def test_bilinear_and_antisymmetric(a, b, c):
    m = 6
    assert hilbert_symbol(a * b, c, m) == hilbert_symbol(a, c, m) * hilbert_symbol(b, c, m)
    assert (hilbert_symbol(a, b, m) * hilbert_symbol(b, a, m)).is_identity
    assert hilbert_symbol(a, -a, m).is_identity
