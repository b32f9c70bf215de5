import pytest
from hypothesis import given, settings, strategies as st

from metakit.catalog import CATALOG
from metakit.intlattice import matvec
from metakit.metalattice import (
    brute_force_index,
    build_metaplectic_datum,
    dominant_lambda,
    heisenberg_dimensions,
    lambda_on_line,
    n_alpha,
    rho_dual_pairing,
)
from metakit.rootdata import RootDatumError, build_root_datum, dot

from conftest import md_of

SL2 = build_root_datum(1, [[1]], [[2]])


def test_n_alpha_values():
    assert n_alpha(1, 3) == 3
    assert n_alpha(2, 4) == 2
    assert n_alpha(3, 6) == 2
    assert n_alpha(0, 5) == 1
    with pytest.raises(ValueError):
        n_alpha(1, 0)


@pytest.mark.parametrize("n,basis", [(3, [[3]]), (2, [[1]]), (1, [[1]]), (4, [[2]]), (6, [[3]])])
def test_sl2_lambda(n, basis):
    md = build_metaplectic_datum(SL2, [[2]], n)
    assert md.lambda_basis == basis


@pytest.mark.parametrize("n", range(1, 7))
def test_sl2_index_against_oracle(n):
    md = build_metaplectic_datum(SL2, [[2]], n)
    assert md.index == brute_force_index([[2]], n) == n // (2 if n % 2 == 0 else 1)
    assert heisenberg_dimensions(md) == (md.index, md.index)


def test_sl2_n3_dual():
    md = md_of("sl2-n3")
    dd = md.dual
    assert sorted(dd.phi) == [(-3,), (3,)]
    assert all(c.ok for c in dd.verify())
    assert rho_dual_pairing(md, (3,)) == 2
    assert rho_dual_pairing(md_of("sl2-n1"), (1,)) == 2
    with pytest.raises(ValueError):
        rho_dual_pairing(md, (1,))


def test_sl3_n3_dual():
    md = md_of("sl3-n3")
    assert sorted(md.dual.phi) == sorted(tuple(3 * x for x in c) for c in md.n_table)
    for y in md.lambda_basis:
        assert all(v % 3 == 0 for v in matvec(md.B, y))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_axioms(name):
    md = md_of(name)
    checks = md.dual.verify()
    assert all(c.ok for c in checks), [c for c in checks if not c.ok]


@pytest.mark.parametrize("name", ["sl2-n1", "pgl2-n2", "sl3-n1", "sp4-n1"])
def test_n1_gives_langlands_dual(name):
    md = md_of(name, n=1)
    assert [list(r) for r in md.dual.cartan] == [list(r) for r in zip(*md.datum.cartan)]


def test_dominant_lambda():
    assert dominant_lambda(md_of("sl2-n3"), 7) == [(0,), (3,), (6,)]
    assert dominant_lambda(md_of("sl2-n4"), 5) == [(0,), (2,), (4,)]
    assert dominant_lambda(md_of("sl3-n3"), 0) == [(0, 0)]


def test_lambda_on_line_sandwich():
    for name in ["sl2-n3", "sl2-n4", "pgl2-n2", "sp4-n4", "sl3-n3"]:
        md = md_of(name)
        for c in md.n_table:
            step = lambda_on_line(md, c)
            na = md.n_of(c)
            assert na % step == 0 and (2 * step) % na == 0


def test_q_vanishing_rejected():
    with pytest.raises(RootDatumError):
        build_metaplectic_datum(SL2, [[0]], 3)


@given(st.integers(1, 4), st.integers(1, 8))
@settings(max_examples=50, deadline=None)
def test_sl2_random_covers(k, n):
    md = build_metaplectic_datum(SL2, [[2 * k]], n)
    assert all(c.ok for c in md.dual.verify())
    assert md.index == brute_force_index([[2 * k]], n)
    na = md.n_of((1,))
    for b in md.lambda_basis:
        assert dot([2], b) % na == 0


@given(st.integers(1, 6), st.sampled_from([1, -1]))
@settings(max_examples=30, deadline=None)
def test_sl3_random_scalings(n, sign):
    d = build_root_datum(2, [[1, 0], [0, 1]], [[2, -1], [-1, 2]])
    md = build_metaplectic_datum(d, [[2 * sign, -sign], [-sign, 2 * sign]], n)
    assert all(c.ok for c in md.dual.verify())
