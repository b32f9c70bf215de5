from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from metakit.intlattice import (
    congruence_kernel,
    determinant,
    hermite_normal_form,
    lattice_coordinates,
    matmul,
    matvec,
    smith_normal_form,
)
from metakit.metalattice import brute_force_index

square = st.integers(1, 3).flatmap(
    lambda r: st.lists(st.lists(st.integers(-6, 6), min_size=r, max_size=r), min_size=r, max_size=r)
)


@given(square)
@settings(max_examples=150, deadline=None)
def test_smith_form_is_diagonal_and_unimodular(a):
    u, d, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = [d[i][i] for i in range(len(d))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d)) if i != j)
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


@given(square)
@settings(max_examples=150, deadline=None)
def test_hermite_form_spans_same_lattice(a):
    assume(determinant(a) != 0)
    h = hermite_normal_form(a)
    assert abs(determinant(h)) == abs(determinant(a))
    for row in a:
        assert lattice_coordinates(h, row) is not None
    for row in h:
        assert lattice_coordinates(a, row) is not None


@given(square, st.integers(1, 6))
@settings(max_examples=150, deadline=None)
def test_congruence_kernel_matches_brute_force(b, n):
    basis, index = congruence_kernel(b, n)
    assert index == brute_force_index(b, n)
    for row in basis:
        assert all(x % n == 0 for x in matvec(b, row))


def test_known_kernel():
    basis, index = congruence_kernel([[2]], 3)
    assert basis == [[3]] or basis == [(3,)] or [list(r) for r in basis] == [[3]]
    assert index == 3
    assert determinant([[2, 1], [1, 1]]) == Fraction(1)
