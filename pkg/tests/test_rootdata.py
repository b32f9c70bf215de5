import pytest

from metakit.intlattice import matmul
from metakit.rootdata import (
    RootDatumError,
    build_root_datum,
    check_invariance,
    coroot_set,
    dominance_leq,
)

from conftest import datum_of
from metakit.catalog import CATALOG

ALL = ["sl2-n1", "pgl2-n2", "sl3-n1", "sp4-n1"]


def test_sl2_and_pgl2():
    d = build_root_datum(1, [[1]], [[2]])
    assert d.cartan == ((2,),)
    assert len(d.weyl) == 2
    assert len(build_root_datum(1, [[2]], [[1]]).weyl) == 2


def test_bad_pairing_rejected():
    with pytest.raises(RootDatumError, match="expected 2"):
        build_root_datum(1, [[1]], [[1]])
    with pytest.raises(RootDatumError, match="finite type"):
        build_root_datum(2, [[1, 0], [0, 1]], [[2, -2], [-2, 2]])
    with pytest.raises(RootDatumError, match="dimension"):
        build_root_datum(2, [[1]], [[2, 0]])


@pytest.mark.parametrize("name,order,roots", [("sl2-n1", 2, 2), ("sl3-n1", 6, 6), ("sp4-n1", 8, 8)])
def test_weyl_orders_and_root_counts(name, order, roots):
    d = datum_of(CATALOG[name])
    assert len(d.weyl) == order
    assert len(coroot_set(d)) == roots


def test_sp4_has_two_root_lengths():
    d = datum_of(CATALOG["sp4-n1"])
    rep = check_invariance(d, CATALOG["sp4-n1"]["B"])
    assert sorted(set(rep.Q.values())) == [1, 2]


@pytest.mark.parametrize("name", ALL)
def test_weyl_structure(name):
    d = datum_of(CATALOG[name])
    W = d.weyl
    ident = W.mats[0]
    for i in range(d.semisimple_rank):
        s = W.mats[W.simple(i)]
        assert [list(r) for r in matmul(s, s)] == [list(r) for r in ident]
    for w in range(len(W)):
        for i in range(d.semisimple_rank):
            assert abs(W.length(W.multiply(W.simple(i), w)) - W.length(w)) == 1
        assert W.multiply(w, W.inverse(w)) == 0
    cs = set(coroot_set(d))
    for w in range(len(W)):
        assert {W.act(w, c) for c in cs} == cs
    assert {tuple(-x for x in c) for c in cs} == cs


def test_coxeter_relation_sl3():
    d = datum_of(CATALOG["sl3-n1"])
    W = d.weyl
    s1, s2 = W.simple(0), W.simple(1)
    x = 0
    for _ in range(3):
        x = W.multiply(W.multiply(x, s1), s2)
    assert x == 0


@pytest.mark.parametrize("name", ALL)
def test_q_constant_on_orbits(name):
    e = CATALOG[name]
    d = datum_of(e)
    rep = check_invariance(d, e["B"])
    assert rep.ok
    W = d.weyl
    for c, qv in rep.Q.items():
        for w in range(len(W)):
            assert rep.Q[W.act(w, c)] == qv


def test_invariance_failures():
    sl2 = build_root_datum(1, [[1]], [[2]])
    rep = check_invariance(sl2, [[3]])
    assert not rep.ok and "not an integer" in rep.failure
    sl3 = datum_of(CATALOG["sl3-n1"])
    assert check_invariance(sl3, [[2, -1], [-1, 2]]).ok
    assert "symmetric" in check_invariance(sl3, [[2, -1], [0, 2]]).failure
    assert "invariant" in check_invariance(sl3, [[2, 0], [0, 2]]).failure


def test_dominance():
    sl2 = build_root_datum(1, [[1]], [[2]])
    assert dominance_leq(sl2, (1,), (1,))
    assert dominance_leq(sl2, (3,), (1,))
    assert not dominance_leq(sl2, (1,), (2,))
