import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from metakit.arith import parse_laurent, prime_field
from metakit.cocycle import KubotaCover, SL2Element, random_sl2, random_sl2_integral
from metakit.scalars import VPoly
from metakit.sl2_explicit import RankOneEngine, genuine_cartan, lambda_step

F7 = prime_field(7)
COVER = KubotaCover(F7, 3, 1)


def test_lambda_step():
    assert lambda_step(3, 1) == 3
    assert lambda_step(4, 1) == 2
    assert lambda_step(2, 1) == 1
    assert lambda_step(9, 3) == 3


def test_trivial_decompositions():
    r = genuine_cartan(COVER.pi(3), COVER)
    assert (r.l, r.zeta.exp, r.in_support) == (3, 0, True)
    rng = random.Random(0)
    for _ in range(20):
        k = random_sl2_integral(rng, F7)
        r = genuine_cartan(COVER.lift_k(k), COVER)
        assert (r.l, r.zeta.exp) == (0, 0)


@pytest.mark.parametrize("text,exp", [("t^-8", 0), ("3*t^-8 + t^-2 + 5", 2)])
def test_golden_decomposition(text, exp):
    x = COVER.mul(COVER.pi(3), COVER.lift(SL2Element.upper(parse_laurent(text, F7))))
    for strategy in ("row", "iwasawa"):
        r = genuine_cartan(x, COVER, strategy)
        assert (r.l, r.zeta.exp, r.in_support) == (5, exp, False)


@given(st.integers(0, 10**6), st.sampled_from([(7, 3, 1), (7, 3, 2), (17, 4, 1), (13, 6, 3)]))
@settings(max_examples=150, deadline=None)
def test_strategies_agree_on_lambda(seed, params):
    q, n, Q = params
    fld = prime_field(q)
    cover = KubotaCover(fld, n, Q)
    rng = random.Random(seed)
    x = cover.lift(random_sl2(rng, fld), rng.randrange(n))
    a = genuine_cartan(x, cover, "row")
    b = genuine_cartan(x, cover, "iwasawa")
    assert a.l == b.l
    if a.in_support:
        assert a.zeta == b.zeta


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_classification_is_bi_k_invariant(seed):
    rng = random.Random(seed)
    x = COVER.lift(random_sl2(rng, F7))
    k1, k2 = (COVER.lift_k(random_sl2_integral(rng, F7)) for _ in range(2))
    a = genuine_cartan(x, COVER)
    b = genuine_cartan(COVER.mul(k1, x, k2), COVER)
    assert a.l == b.l
    if a.in_support:
        assert a.zeta == b.zeta


def test_satake_small_rows():
    eng = RankOneEngine(7, 3, 1)
    assert eng.satake_row(0) == {0: 1}
    assert eng.satake_row(3) == {-3: 343, 0: 294, 3: 343}
    assert eng.outside_support(3) == {}


def test_classical_satake_row():
    # n = 1: S(c_1) = q (z + z^-1) + (q - 1), the classical rank-one formula
    eng = RankOneEngine(5, 1, 1)
    assert eng.satake_row(1) == {-1: 5, 0: 4, 1: 5}


def test_classical_convolution_matches_tree_counts():
    eng = RankOneEngine(5, 1, 1)
    assert eng.convolve(1, 1) == {2: 1, 1: 4, 0: 30}
    assert eng.convolve(1, 1, exhaustive=True) == eng.convolve(1, 1)
    assert eng.convolve(1, 2) == {3: 1, 2: 4, 1: 25}
    assert eng.convolve(0, 2) == {2: 1}


def test_covering_convolution_commutes():
    eng = RankOneEngine(7, 3, 1)
    c = eng.convolve(3, 3)
    assert c == {6: 1, 3: 294, 0: 134456}
    assert all(isinstance(v, Fraction) and v.denominator == 1 and v >= 0 for v in c.values())


def test_iwahori_values():
    assert RankOneEngine(7, 3, 1).iwahori_integrand(3)["value"] == VPoly.q(5)
    r = RankOneEngine(17, 4, 1).iwahori_integrand(2)
    assert r["value"] == VPoly() and not r["symbol_mismatches"]
    assert RankOneEngine(7, 1, 1).iwahori_integrand(1)["value"] == VPoly.q(1)
    with pytest.raises(ValueError):
        RankOneEngine(7, 3, 1).iwahori_integrand(1)


@pytest.mark.parametrize("q,n,Q", [(7, 1, 1), (7, 3, 1), (17, 4, 2), (17, 4, 1), (13, 6, 3)])
def test_gk_rank_one(q, n, Q):
    r = RankOneEngine(q, n, Q).gk_rank_one()
    assert r["holds"], r


def test_support_witness():
    w = RankOneEngine(7, 3, 1).support_witness()
    assert w["l"] == 1 and w["phi"] != 0
    assert RankOneEngine(7, 1, 1).support_witness() is None
