"""Integer and rational linear algebra on small dense matrices.

Matrices are lists of rows of Python ints (or Fractions); everything is
exact.  Sizes here never exceed a handful of rows, so clarity wins over
asymptotics.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "identity",
    "matmul",
    "matvec",
    "transpose",
    "smith_normal_form",
    "hermite_normal_form",
    "solve_rational",
    "determinant",
    "lattice_coordinates",
    "congruence_kernel",
]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def smith_normal_form(a):
    """Return (U, D, V) with U a V = D diagonal, U and V unimodular.

    The diagonal satisfies d_1 | d_2 | ... with nonnegative entries.
    """
    m = len(a)
    k = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(k)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(m, k)):
        while True:
            pivots = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, k) if d[i][j]]
            if not pivots:
                return u, d, v
            _, i, j = min(pivots)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // d[t][t]))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, k):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // d[t][t]))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, k) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def hermite_normal_form(rows):
    """Row-style HNF of the lattice spanned by ``rows`` (zero rows dropped).

    Result is upper echelon with positive pivots and entries above each pivot
    reduced into [0, pivot).  Equal lattices give equal outputs.
    """
    h = [list(map(int, r)) for r in rows if any(r)]
    if not h:
        return []
    ncols = len(h[0])
    out = []
    for col in range(ncols):
        if not h:
            break
        # Euclid down the column until at most one row is nonzero there
        while True:
            h.sort(key=lambda r: (r[col] == 0, abs(r[col])))
            if len(h) < 2 or h[1][col] == 0:
                break
            piv = h[0]
            h = [piv] + [[x - (r[col] // piv[col]) * y for x, y in zip(r, piv)] for r in h[1:]]
        if h[0][col] == 0:
            continue
        piv = h[0] if h[0][col] > 0 else [-x for x in h[0]]
        out.append(piv)
        h = [r for r in h[1:] if any(r)]
    for i, row in enumerate(out):
        pc = next(c for c, x in enumerate(row) if x)
        for j in range(i):
            f = out[j][pc] // row[pc]
            if f:
                out[j] = [x - f * y for x, y in zip(out[j], row)]
    return out


def solve_rational(a, b):
    """Solve a x = b over Q.  Returns a list of Fractions or None if
    inconsistent; raises ValueError if the solution is not unique."""
    m = len(a)
    k = len(a[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, m)):
        return None
    if len(piv_cols) < k:
        raise ValueError("linear system is underdetermined")
    x = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][k]
    return x


def determinant(a) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def lattice_coordinates(basis_rows, x):
    """Integer coordinates of ``x`` in the lattice spanned by ``basis_rows``,
    or None when ``x`` is not in the lattice."""
    sol = solve_rational(transpose(basis_rows), x)
    if sol is None or any(c.denominator != 1 for c in sol):
        return None
    return [int(c) for c in sol]


def congruence_kernel(b, n: int):
    """Basis (HNF rows) and index of {x in Z^r : b x = 0 mod n}.

    With U b V = D, the condition becomes d_i y_i = 0 mod n for y = V^-1 x,
    so the kernel is spanned by the columns of V scaled by n / gcd(n, d_i).
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    r = len(b)
    _, d, v = smith_normal_form(b)
    scales = [n // math.gcd(n, d[i][i]) if i < len(d) and i < len(d[0]) else 1 for i in range(r)]
    cols = [[v[row][i] * scales[i] for row in range(r)] for i in range(r)]
    return hermite_normal_form(cols), math.prod(scales)
