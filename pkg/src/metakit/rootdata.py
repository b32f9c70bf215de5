"""Root data, Weyl groups and Weyl-invariant bilinear forms.

Coroots live in Y = Z^r, roots in Y* = Z^r and the pairing is the dot
product.  A simple reflection acts on Y by y -> y - <a_i^v, y> a_i and on Y*
by x -> x - <x, a_i> a_i^v.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from metakit.intlattice import determinant, matmul, matvec, solve_rational, transpose

__all__ = [
    "RootDatumError",
    "RootDatum",
    "Root",
    "WeylGroup",
    "InvarianceReport",
    "build_root_datum",
    "weyl_generate",
    "coroot_set",
    "check_invariance",
    "dominance_leq",
    "dot",
]

WEYL_SAFETY_BOUND = 10**6


class RootDatumError(ValueError):
    """Invalid root datum or bilinear form."""


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


Vec = tuple


@dataclass(frozen=True)
class Root:
    """A coroot of the group together with its paired root."""

    coroot: Vec
    root: Vec
    positive: bool
    coeffs: tuple  # coordinates of the coroot in the simple coroots


@dataclass(frozen=True)
class RootDatum:
    rank: int
    simple_coroots: tuple
    simple_roots: tuple

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_coroots)

    @cached_property
    def cartan(self) -> tuple:
        """A[i][j] = <root_i, coroot_j>."""
        return tuple(
            tuple(dot(r, c) for c in self.simple_coroots) for r in self.simple_roots
        )

    def reflect(self, i: int, y):
        c = dot(self.simple_roots[i], y)
        return tuple(a - c * b for a, b in zip(y, self.simple_coroots[i]))

    def reflect_dual(self, i: int, x):
        c = dot(x, self.simple_coroots[i])
        return tuple(a - c * b for a, b in zip(x, self.simple_roots[i]))

    def simple_coords(self, y):
        """Coordinates of y in the simple coroots (Fractions), or None if y is
        outside their rational span."""
        if not self.simple_coroots:
            return () if not any(y) else None
        # <root_j, y> = sum_i c_i A[j][i]
        rhs = [dot(r, y) for r in self.simple_roots]
        c = solve_rational([list(row) for row in self.cartan], rhs)
        if c is None:
            return None
        back = [sum(ci * a[k] for ci, a in zip(c, self.simple_coroots)) for k in range(self.rank)]
        if any(Fraction(b) != Fraction(v) for b, v in zip(back, y)):
            return None
        return tuple(c)

    def height(self, y) -> Fraction:
        c = self.simple_coords(y)
        if c is None:
            raise RootDatumError(f"{y} is not in the span of the simple coroots")
        return sum(c, Fraction(0))

    def is_dominant(self, y) -> bool:
        return all(dot(r, y) >= 0 for r in self.simple_roots)

    @cached_property
    def weyl(self) -> "WeylGroup":
        return weyl_generate(self)

    @cached_property
    def roots(self) -> tuple:
        return tuple(_root_system(self))

    @cached_property
    def positive_roots(self) -> tuple:
        return tuple(r for r in self.roots if r.positive)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "simple_coroots": [list(c) for c in self.simple_coroots],
            "simple_roots": [list(r) for r in self.simple_roots],
        }


def _is_finite_cartan(a) -> bool:
    l = len(a)
    for i in range(l):
        if a[i][i] != 2:
            return False
        for j in range(l):
            if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                return False
    # symmetrizable of finite type <=> all principal minors of the
    # symmetrized matrix positive; for rank <= small we check leading
    # principal minors of every ordering via all subsets
    from itertools import combinations

    for k in range(1, l + 1):
        for idx in combinations(range(l), k):
            sub = [[a[i][j] for j in idx] for i in idx]
            if determinant(sub) <= 0:
                return False
    return True


def build_root_datum(rank: int, simple_coroots, simple_roots) -> RootDatum:
    coroots = tuple(tuple(int(x) for x in c) for c in simple_coroots)
    roots = tuple(tuple(int(x) for x in r) for r in simple_roots)
    if len(coroots) != len(roots):
        raise RootDatumError("need as many simple roots as simple coroots")
    for v in coroots + roots:
        if len(v) != rank:
            raise RootDatumError(f"vector {list(v)} does not have dimension {rank}")
    datum = RootDatum(rank, coroots, roots)
    a = datum.cartan
    for i in range(len(a)):
        if a[i][i] != 2:
            raise RootDatumError(f"<root_{i}, coroot_{i}> = {a[i][i]}, expected 2")
    if not _is_finite_cartan(a):
        raise RootDatumError(f"Cartan matrix {[list(r) for r in a]} is not of finite type")
    # finite type Cartan matrices are nonsingular, which forces the simple
    # coroots (and roots) to be linearly independent
    return datum


class WeylGroup:
    """All Weyl group elements as integer matrices acting on Y.

    Elements are indexed 0..|W|-1 in breadth-first order, so index 0 is the
    identity and ``length`` is the word length in simple reflections.
    """

    def __init__(self, datum: RootDatum, mats, words):
        self.datum = datum
        self.mats = mats
        self.words = words
        self.index = {m: i for i, m in enumerate(mats)}
        self.lengths = [len(w) for w in words]
        self._mul = {}

    def __len__(self):
        return len(self.mats)

    @property
    def identity(self) -> int:
        return 0

    def simple(self, i: int) -> int:
        return self.index[self.datum_simple_mats[i]]

    @cached_property
    def datum_simple_mats(self):
        return [_reflection_matrix(self.datum, i) for i in range(self.datum.semisimple_rank)]

    def multiply(self, a: int, b: int) -> int:
        key = (a, b)
        out = self._mul.get(key)
        if out is None:
            m = tuple(map(tuple, matmul(self.mats[a], self.mats[b])))
            out = self._mul[key] = self.index[m]
        return out

    def inverse(self, a: int) -> int:
        w = self.words[a]
        out = 0
        for i in reversed(w):
            out = self.multiply(out, self.simple(i))
        return out

    def length(self, a: int) -> int:
        return self.lengths[a]

    def act(self, a: int, y):
        return tuple(matvec(self.mats[a], y))

    def act_dual(self, a: int, x):
        """Contragredient action on Y*: <w x, w y> = <x, y>."""
        inv = self.mats[self.inverse(a)]
        return tuple(matvec(transpose(inv), x))

    def longest(self) -> int:
        return max(range(len(self)), key=lambda k: self.lengths[k])


def _reflection_matrix(datum: RootDatum, i: int):
    cols = []
    for k in range(datum.rank):
        e = tuple(int(j == k) for j in range(datum.rank))
        cols.append(datum.reflect(i, e))
    return tuple(map(tuple, transpose(cols)))


def weyl_generate(datum: RootDatum) -> WeylGroup:
    """Breadth-first closure over the simple reflections."""
    r = datum.rank
    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    gens = [_reflection_matrix(datum, i) for i in range(datum.semisimple_rank)]
    mats = [ident]
    words = [()]
    seen = {ident: 0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for i, s in enumerate(gens):
            m = tuple(map(tuple, matmul(mats[k], s)))
            if m not in seen:
                if len(mats) >= WEYL_SAFETY_BOUND:
                    raise RootDatumError("Weyl group exceeds safety bound")
                seen[m] = len(mats)
                mats.append(m)
                words.append(words[k] + (i,))
                queue.append(seen[m])
    return WeylGroup(datum, mats, words)


def _root_system(datum: RootDatum):
    """Simultaneous W-orbits of (coroot, root) pairs."""
    pairs = {}
    frontier = list(zip(datum.simple_coroots, datum.simple_roots))
    for c, r in frontier:
        pairs[c] = r
    while frontier:
        nxt = []
        for c, r in frontier:
            for i in range(datum.semisimple_rank):
                c2 = datum.reflect(i, c)
                if c2 not in pairs:
                    pairs[c2] = datum.reflect_dual(i, r)
                    nxt.append((c2, pairs[c2]))
        frontier = nxt
    out = []
    for c in sorted(pairs):
        coeffs = datum.simple_coords(c)
        if any(x.denominator != 1 for x in coeffs):
            raise RootDatumError(f"coroot {c} is not an integral combination of simple coroots")
        pos = all(x >= 0 for x in coeffs)
        if not pos and not all(x <= 0 for x in coeffs):
            raise RootDatumError(f"coroot {c} is neither positive nor negative")
        out.append(Root(c, pairs[c], pos, tuple(int(x) for x in coeffs)))
    out.sort(key=lambda a: (not a.positive, sum(abs(x) for x in a.coeffs), a.coeffs))
    return out


def coroot_set(datum: RootDatum) -> list:
    return [a.coroot for a in datum.roots]


@dataclass(frozen=True)
class InvarianceReport:
    ok: bool
    Q: dict  # coroot -> Q value (Fraction)
    failure: str | None = None


def check_invariance(datum: RootDatum, b) -> InvarianceReport:
    """Symmetry, W-invariance on generators and Q-integrality on coroots."""
    r = datum.rank
    b = [list(map(int, row)) for row in b]
    if len(b) != r or any(len(row) != r for row in b):
        return InvarianceReport(False, {}, f"B must be {r}x{r}")
    for i in range(r):
        for j in range(r):
            if b[i][j] != b[j][i]:
                return InvarianceReport(False, {}, f"B is not symmetric: b[{i}][{j}] != b[{j}][{i}]")

    def form(x, y):
        return sum(x[i] * b[i][j] * y[j] for i in range(r) for j in range(r))

    basis = [tuple(int(i == k) for i in range(r)) for k in range(r)]
    for s in range(datum.semisimple_rank):
        for x in basis:
            for y in basis:
                if form(datum.reflect(s, x), datum.reflect(s, y)) != form(x, y):
                    return InvarianceReport(
                        False, {}, f"B is not invariant under s_{s}: B(s e_{x.index(1)}, s e_{y.index(1)}) differs"
                    )
    qvals = {}
    for a in datum.roots:
        qv = Fraction(form(a.coroot, a.coroot), 2)
        qvals[a.coroot] = qv
        if qv.denominator != 1:
            return InvarianceReport(False, qvals, f"Q({list(a.coroot)}) = {qv} is not an integer")
    return InvarianceReport(True, qvals)


def dominance_leq(datum: RootDatum, lam, mu) -> bool:
    """True iff lam - mu is a nonnegative integer combination of simple coroots."""
    diff = tuple(a - b for a, b in zip(lam, mu))
    c = datum.simple_coords(diff)
    return c is not None and all(x.denominator == 1 and x >= 0 for x in c)
