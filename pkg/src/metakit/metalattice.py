"""Structure constants of a degree-n cover: the lattice Lambda, the integers
n_alpha and the dual root datum (Lambda, {n_a a}, Hom(Lambda, Z), {a^v / n_a}).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from metakit.intlattice import (
    congruence_kernel,
    lattice_coordinates,
    matvec,
    solve_rational,
    transpose,
)
from metakit.rootdata import (
    RootDatum,
    RootDatumError,
    build_root_datum,
    check_invariance,
    dot,
)

__all__ = [
    "MetaplecticDatum",
    "DualRootDatum",
    "AxiomCheck",
    "n_alpha",
    "lambda_lattice",
    "build_metaplectic_datum",
    "dual_root_datum",
    "heisenberg_dimensions",
    "dominant_lambda",
    "rho_dual_pairing",
    "lambda_on_line",
    "brute_force_index",
]


def n_alpha(q_val: int, n: int) -> int:
    """n / gcd(n, Q); gcd(n, 0) is n."""
    if n <= 0:
        raise ValueError("n must be positive")
    return n // math.gcd(n, abs(int(q_val)))


def lambda_lattice(b, n: int):
    """HNF basis rows and index of {x : B x = 0 mod n}."""
    return congruence_kernel([list(row) for row in b], n)


def brute_force_index(b, n: int) -> int:
    """[Y : Lambda] by counting solutions of B x = 0 mod n over (Z/n)^r."""
    r = len(b)
    count = 0
    for x in itertools.product(range(n), repeat=r):
        if all(sum(row[j] * x[j] for j in range(r)) % n == 0 for row in b):
            count += 1
    return n**r // count


@dataclass(frozen=True, eq=False)
class MetaplecticDatum:
    datum: RootDatum
    B: tuple
    n: int

    def form(self, x, y) -> int:
        r = self.datum.rank
        return sum(x[i] * self.B[i][j] * y[j] for i in range(r) for j in range(r))

    def Q(self, y) -> int:
        return self.form(y, y) // 2

    @cached_property
    def Q_table(self) -> dict:
        return {a.coroot: self.Q(a.coroot) for a in self.datum.roots}

    @cached_property
    def n_table(self) -> dict:
        return {c: n_alpha(qv, self.n) for c, qv in self.Q_table.items()}

    def n_of(self, coroot) -> int:
        return self.n_table[tuple(coroot)]

    @cached_property
    def _lattice(self):
        return lambda_lattice(self.B, self.n)

    @property
    def lambda_basis(self) -> list:
        """HNF rows; each row is a basis vector of Lambda in Y-coordinates."""
        return [list(r) for r in self._lattice[0]]

    @property
    def index(self) -> int:
        return self._lattice[1]

    def in_lambda(self, y) -> bool:
        return all(v % self.n == 0 for v in matvec(self.B, list(y)))

    def lambda_coords(self, y):
        """Integer coordinates of y in the Lambda basis (None if y not in Lambda)."""
        return lattice_coordinates(self.lambda_basis, list(y))

    def from_lambda_coords(self, k) -> tuple:
        basis = self.lambda_basis
        return tuple(sum(c * basis[i][j] for i, c in enumerate(k)) for j in range(self.datum.rank))

    @cached_property
    def dual(self) -> "DualRootDatum":
        return dual_root_datum(self)

    def same_dual_as(self, other: "MetaplecticDatum") -> bool:
        return self.dual.signature() == other.dual.signature()

    def to_json(self) -> dict:
        out = self.datum.to_json()
        out["B"] = [list(r) for r in self.B]
        out["n"] = self.n
        return out


def build_metaplectic_datum(datum: RootDatum, b, n: int) -> MetaplecticDatum:
    if n < 1:
        raise ValueError("n must be positive")
    rep = check_invariance(datum, b)
    if not rep.ok:
        raise RootDatumError(rep.failure)
    for c, qv in rep.Q.items():
        if qv == 0:
            raise RootDatumError(f"Q vanishes on the coroot {list(c)}")
    return MetaplecticDatum(datum, tuple(tuple(int(x) for x in row) for row in b), n)


def lambda_on_line(md: MetaplecticDatum, alpha) -> Fraction:
    """The c > 0 with Lambda meet Q alpha = Z c alpha."""
    g = math.gcd(*alpha)
    prim = [x // g for x in alpha]
    content = math.gcd(*matvec(md.B, prim))
    step = md.n // math.gcd(md.n, content)
    return Fraction(step, g)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    witness: str | None = None


@dataclass(frozen=True, eq=False)
class DualRootDatum:
    """The dual quadruple.  Phi lives in Y (and in Lambda); Phi' is stored as
    rational vectors in Y* together with their integer values on the Lambda
    basis."""

    md: MetaplecticDatum
    phi: tuple  # n_a a, one per coroot, same order as md.datum.roots
    phi_dual: tuple  # a^v / n_a as tuples of Fractions
    certificates: tuple  # <a^v / n_a, b_k> for the Lambda basis b_k

    @property
    def simple_roots(self):
        l = self.md.datum.semisimple_rank
        return self.phi[:l] if l else ()

    @cached_property
    def cartan(self) -> tuple:
        """<n_i a_i, a_j^v / n_j>; for n = 1 the transpose of the group's."""
        d = self.md.datum
        out = []
        for i, ci in enumerate(d.simple_coroots):
            ni = self.md.n_of(ci)
            row = []
            for j, cj in enumerate(d.simple_coroots):
                nj = self.md.n_of(cj)
                row.append(Fraction(dot(d.simple_roots[j], ci) * ni, nj))
            out.append(tuple(int(x) if x.denominator == 1 else x for x in row))
        return tuple(out)

    @cached_property
    def hecke_datum(self) -> RootDatum:
        """The dual datum written in Lambda coordinates, with translations
        n_a a as coroots and the functionals a^v / n_a as roots."""
        md = self.md
        d = md.datum
        cor, ro = [], []
        for c, r in zip(d.simple_coroots, d.simple_roots):
            na = md.n_of(c)
            cor.append(md.lambda_coords([na * x for x in c]))
            ro.append([int(Fraction(dot(r, b), na)) for b in md.lambda_basis])
        return build_root_datum(len(md.lambda_basis), cor, ro)

    def signature(self):
        basis = tuple(map(tuple, self.md.lambda_basis))
        return (basis, tuple(sorted(self.phi)), tuple(sorted(self.phi_dual)))

    def verify(self) -> list:
        return _verify_dual(self)

    def to_json(self) -> dict:
        return {
            "lambda_basis": self.md.lambda_basis,
            "index": self.md.index,
            "phi": [list(p) for p in self.phi],
            "phi_dual": [[str(x) for x in p] for p in self.phi_dual],
            "dual_cartan": [[str(x) for x in row] for row in self.cartan],
        }


def dual_root_datum(md: MetaplecticDatum) -> DualRootDatum:
    phi, phid, certs = [], [], []
    for a in md.datum.roots:
        na = md.n_of(a.coroot)
        phi.append(tuple(na * x for x in a.coroot))
        phid.append(tuple(Fraction(x, na) for x in a.root))
        certs.append(tuple(Fraction(dot(a.root, b), na) for b in md.lambda_basis))
    return DualRootDatum(md, tuple(phi), tuple(phid), tuple(certs))


def _verify_dual(dd: DualRootDatum) -> list:
    md = dd.md
    d = md.datum
    W = d.weyl
    checks = []

    def record(name, witness):
        checks.append(AxiomCheck(name, witness is None, witness))

    # Q(a) divides B(a, y) for every basis vector y
    wit = None
    for a in d.roots:
        qa = md.Q(a.coroot)
        for k in range(d.rank):
            e = [int(j == k) for j in range(d.rank)]
            if md.form(a.coroot, e) % qa:
                wit = f"Q({list(a.coroot)}) = {qa} does not divide B(a, e_{k})"
                break
        if wit:
            break
    record("Q(a) | B(a, y)", wit)

    wit = next((f"{list(p)} not in Lambda" for p in dd.phi if not md.in_lambda(p)), None)
    record("Phi in Lambda", wit)

    wit = next(
        (f"{[str(x) for x in p]} not integral on Lambda" for p, c in zip(dd.phi_dual, dd.certificates)
         if any(x.denominator != 1 for x in c)),
        None,
    )
    record("Phi' integral on Lambda", wit)

    wit = next(
        (f"pairing {v} for {list(p)}" for p, pd in zip(dd.phi, dd.phi_dual)
         if (v := sum(x * y for x, y in zip(p, pd))) != 2),
        None,
    )
    record("<a'/n_a, n_a a> = 2", wit)

    phis = set(dd.phi)
    phids = set(dd.phi_dual)
    wit = None
    for w in range(len(W)):
        for p in dd.phi:
            if W.act(w, p) not in phis:
                wit = f"w{W.words[w]} moves {list(p)} out of Phi"
        for p in dd.phi_dual:
            img = tuple(matvec(transpose(W.mats[W.inverse(w)]), list(p)))
            if tuple(Fraction(x) for x in img) not in phids:
                wit = f"w{W.words[w]} moves a coroot of the dual out of Phi'"
        if wit:
            break
    record("W-stability of Phi and Phi'", wit)

    # reflection closure: s_b(a) = a - <b', a> b stays in Phi
    wit = None
    for b, bd in zip(dd.phi, dd.phi_dual):
        for a in dd.phi:
            c = sum(x * y for x, y in zip(bd, a))
            img = tuple(x - c * y for x, y in zip(a, b))
            if c.denominator != 1 or img not in phis:
                wit = f"s_{list(b)} sends {list(a)} outside Phi"
                break
        if wit:
            break
    record("reflection closure", wit)

    wit = None
    for vec in md.lambda_basis:
        for s in range(d.semisimple_rank):
            if not md.in_lambda(d.reflect(s, vec)):
                wit = f"s_{s} moves {vec} out of Lambda"
    record("W Lambda = Lambda", wit)

    wit = None
    for a in d.roots:
        na = md.n_of(a.coroot)
        c = lambda_on_line(md, a.coroot)
        if not (c <= na and Fraction(na, 2) <= c and Fraction(na) / c == int(Fraction(na) / c)):
            wit = f"Lambda meet Q{list(a.coroot)} = Z*{c}*a not between n_a and n_a/2"
            break
        # Z c a contains n_a a and sits inside (n_a / 2) Z a
        if (Fraction(na) / c).denominator != 1 or (c / Fraction(na, 2)).denominator != 1:
            wit = f"sandwich fails for {list(a.coroot)}"
            break
    record("sandwich n_a Z a < Lambda meet Q a < (n_a/2) Z a", wit)

    wit = None
    for a in d.roots:
        na = md.n_of(a.coroot)
        for vec in md.lambda_basis:
            if dot(a.root, vec) % na:
                wit = f"<{list(a.root)}, {vec}> not in {na}Z"
    record("<a^v, Lambda> in n_a Z", wit)
    return checks


def heisenberg_dimensions(md: MetaplecticDatum):
    """(dim of the irreducible torus representation, Whittaker dimension)."""
    return md.index, md.index


def dominant_lambda(md: MetaplecticDatum, height_bound) -> list:
    """Dominant elements of Lambda with height at most ``height_bound``."""
    d = md.datum
    if d.semisimple_rank != d.rank:
        raise RootDatumError("dominant enumeration needs a semisimple datum")
    basis = md.lambda_basis
    # Lambda coordinates of the simple coroots bound the search box:
    # dominant elements have nonnegative simple-coroot coordinates <= height
    inv_cols = [solve_rational(transpose(basis), list(c)) for c in d.simple_coroots]
    box = [
        math.floor(sum(abs(col[k]) for col in inv_cols) * height_bound)
        for k in range(len(basis))
    ]
    out = []
    for k in itertools.product(*[range(-b, b + 1) for b in box]):
        y = md.from_lambda_coords(k)
        if d.is_dominant(y) and d.height(y) <= height_bound:
            out.append(y)
    return sorted(set(out))


def rho_dual_pairing(md: MetaplecticDatum, lam) -> int:
    """Exponent of v (v^2 = q) equal to q^<rho', lam>, rho' the half sum of
    positive elements of Phi'."""
    if not md.in_lambda(lam):
        raise ValueError(f"{list(lam)} is not in Lambda")
    total = Fraction(0)
    for a in md.datum.positive_roots:
        total += Fraction(dot(a.root, lam), md.n_of(a.coroot))
    assert total.denominator == 1
    return int(total)
