"""Symbolic side: the group algebra of Lambda, orbit sums, Gindikin-Karpelevich
factors, and the Iwahori-Hecke algebra on W_a = Lambda x| W of the dual datum.

Hecke elements are dicts {(lam, w): VPoly} with lam in Lambda coordinates and
w an index into the Weyl group.  ``T`` below is the Iwahori-Matsumoto basis of
the dual datum; the normalization of the covering group's own basis differs
by the powers of v recorded in :meth:`HeckeAlgebra.paper_scale`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from metakit.intlattice import lattice_coordinates, matvec
from metakit.metalattice import MetaplecticDatum
from metakit.rootdata import dot
from metakit.scalars import VPoly

__all__ = [
    "GroupAlgebraElement",
    "HeckeAlgebra",
    "HeckeElement",
    "AffineWeylElement",
    "DatumMismatchError",
    "affine_length",
    "hecke_multiply",
    "bernstein_rescale",
    "u_relations_check",
    "orbit_sum",
    "orbit_sum_multiply",
    "gk_coefficient",
    "gk_coefficient_direct",
    "renorm_factor",
    "renorm_cocycle_check",
    "is_regular",
    "verify_presentation",
    "u_structure_table",
]

ONE = VPoly.const(1)


def _q(k=1):
    return VPoly.q(k)


# --- group algebra of Lambda ---------------------------------------------


class GroupAlgebraElement:
    """sum c_lam z_lam over lam in Lambda (keys are Y-coordinate tuples)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = VPoly._coerce(c)
            if not c.is_zero:
                clean[tuple(k)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, lam, c=1):
        return cls({tuple(lam): c})

    @classmethod
    def one(cls, rank):
        return cls({(0,) * rank: 1})

    def __add__(self, o):
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, VPoly()) + c
        return GroupAlgebraElement(out)

    def __neg__(self):
        return GroupAlgebraElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, VPoly)):
            return GroupAlgebraElement({k: c * o for k, c in self.terms.items()})
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, VPoly()) + c1 * c2
        return GroupAlgebraElement(out)

    __rmul__ = __mul__

    def act(self, weyl, w: int) -> "GroupAlgebraElement":
        """z_lam -> z_{w lam}."""
        return GroupAlgebraElement({weyl.act(w, k): c for k, c in self.terms.items()})

    def __eq__(self, o):
        return isinstance(o, GroupAlgebraElement) and self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def to_json(self):
        return {",".join(map(str, k)): str(c) for k, c in sorted(self.terms.items())}

    def __repr__(self):
        return " + ".join(f"({c})z{list(k)}" for k, c in sorted(self.terms.items())) or "0"


def orbit_sum(md: MetaplecticDatum, lam) -> GroupAlgebraElement:
    """d_lam: the characteristic function of the orbit W lam."""
    W = md.datum.weyl
    return GroupAlgebraElement({W.act(w, tuple(lam)): 1 for w in range(len(W))})


def _dominant_rep(md, lam):
    W = md.datum.weyl
    for w in range(len(W)):
        y = W.act(w, lam)
        if md.datum.is_dominant(y):
            return y
    raise AssertionError("no dominant element in orbit")


def expand_in_orbit_sums(md: MetaplecticDatum, f: GroupAlgebraElement) -> dict:
    """Write a W-invariant f as sum c_nu d_nu, peeling the highest term first."""
    d = md.datum
    rest = GroupAlgebraElement(dict(f.terms))
    out = {}
    while rest.terms:
        dom = [k for k in rest.terms if d.is_dominant(k)]
        if not dom:
            raise ValueError("element is not W-invariant")
        top = max(dom, key=lambda k: (d.height(k), k))
        c = rest.terms[top]
        out[top] = c
        rest = rest - orbit_sum(md, top) * c
    return out


def orbit_sum_multiply(lam, mu, md: MetaplecticDatum) -> dict:
    """d_lam d_mu expanded in the orbit-sum basis."""
    return expand_in_orbit_sums(md, orbit_sum(md, lam) * orbit_sum(md, mu))


def _positive_with_n(md):
    for a in md.datum.positive_roots:
        yield a, md.n_of(a.coroot)


def _inversion_set(md, w):
    W = md.datum.weyl
    pos = {a.coroot for a in md.datum.positive_roots}
    return [(a, na) for a, na in _positive_with_n(md) if W.act(w, a.coroot) not in pos]


def gk_coefficient(w: int, md: MetaplecticDatum):
    """(numerator, denominator) of prod over {a > 0 : w a < 0} of
    (1 - q^-1 x^{n_a}) (1 - x^n)/(1 - x^{n_a}), with x^k = z_{k a}.

    (1 - x^n)/(1 - x^{n_a}) = sum_{j < n/n_a} x^{j n_a} exactly, so the
    denominator is always 1."""
    r = md.datum.rank
    num = GroupAlgebraElement.one(r)
    for a, na in _inversion_set(md, w):
        factor = GroupAlgebraElement.one(r) - GroupAlgebraElement.monomial(
            tuple(na * x for x in a.coroot), _q(-1)
        )
        geom = GroupAlgebraElement(
            {tuple(j * na * x for x in a.coroot): 1 for j in range(md.n // na)}
        )
        num = num * factor * geom
    return num, GroupAlgebraElement.one(r)


def gk_coefficient_direct(w: int, md: MetaplecticDatum):
    """Same product kept as an unreduced fraction; used to cross-check the
    cancellation in :func:`gk_coefficient`."""
    r = md.datum.rank
    num = GroupAlgebraElement.one(r)
    den = GroupAlgebraElement.one(r)
    for a, na in _inversion_set(md, w):
        num = num * (
            GroupAlgebraElement.one(r)
            - GroupAlgebraElement.monomial(tuple(na * x for x in a.coroot), _q(-1))
        )
        num = num * (GroupAlgebraElement.one(r) - GroupAlgebraElement.monomial(tuple(md.n * x for x in a.coroot)))
        den = den * (GroupAlgebraElement.one(r) - GroupAlgebraElement.monomial(tuple(na * x for x in a.coroot)))
    return num, den


def renorm_factor(w: int, md: MetaplecticDatum) -> GroupAlgebraElement:
    """c(w) = prod over {a > 0 : w a < 0} of (1 - z_{n a})."""
    r = md.datum.rank
    out = GroupAlgebraElement.one(r)
    for a, _ in _inversion_set(md, w):
        out = out * (GroupAlgebraElement.one(r) - GroupAlgebraElement.monomial(tuple(md.n * x for x in a.coroot)))
    return out


def renorm_cocycle_check(md: MetaplecticDatum) -> dict:
    """c(w1 w2) = c(w2) * (w2^-1 . c(w1)) for all pairs with additive length."""
    W = md.datum.weyl
    pairs = 0
    failures = []
    for w1 in range(len(W)):
        for w2 in range(len(W)):
            w12 = W.multiply(w1, w2)
            if W.length(w12) != W.length(w1) + W.length(w2):
                continue
            pairs += 1
            lhs = renorm_factor(w12, md)
            rhs = renorm_factor(w2, md) * renorm_factor(w1, md).act(W, W.inverse(w2))
            if lhs != rhs:
                failures.append((W.words[w1], W.words[w2]))
    return {"pairs": pairs, "failures": failures, "ok": not failures}


def _lambda_action_matrix(md, w):
    """Matrix of w on Lambda in Lambda coordinates (columns = images of basis)."""
    W = md.datum.weyl
    cols = []
    for b in md.lambda_basis:
        cols.append(md.lambda_coords(W.act(w, tuple(b))))
    return cols


def is_regular(chi, order: int, md: MetaplecticDatum) -> bool:
    """chi sends the k-th Lambda basis vector to zeta_order^chi[k]; regular
    means chi o w != chi for all w != 1."""
    W = md.datum.weyl
    chi = [c % order for c in chi]
    for w in range(1, len(W)):
        cols = _lambda_action_matrix(md, w)
        moved = [sum(chi[j] * col[j] for j in range(len(chi))) % order for col in cols]
        if moved == chi:
            return False
    return True


# --- extended affine Hecke algebra --------------------------------------


class DatumMismatchError(ValueError):
    pass


def _join(a, b):
    if a is not None and b is not None and a != b:
        raise DatumMismatchError("Hecke elements belong to different data")
    return a if a is not None else b


@dataclass(frozen=True, eq=False)
class HeckeElement:
    """Finite map W_a -> VPoly; ``key`` names the dual datum it lives over."""

    terms: dict  # (lam, w) -> VPoly
    key: object = None

    def __add__(self, o):
        key = _join(self.key, o.key)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, VPoly()) + c
        return HeckeElement({k: c for k, c in out.items() if not c.is_zero}, key)

    def __neg__(self):
        return HeckeElement({k: -c for k, c in self.terms.items()}, self.key)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c) -> "HeckeElement":
        c = VPoly._coerce(c)
        return HeckeElement({k: v * c for k, v in self.terms.items() if not (v * c).is_zero}, self.key)

    def __eq__(self, o):
        if not isinstance(o, HeckeElement):
            return NotImplemented
        _join(self.key, o.key)
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))


@dataclass(frozen=True)
class AffineWeylElement:
    """t_lam w with lam in Lambda coordinates and w a Weyl group index."""

    lam: tuple
    w: int = 0

    def pair(self):
        return (tuple(self.lam), self.w)


class HeckeAlgebra:
    """Iwahori-Matsumoto algebra of W_a = Lambda x| W for the dual datum of ``md``."""

    def __init__(self, md: MetaplecticDatum):
        self.md = md
        self.hd = md.dual.hecke_datum
        self.W = self.hd.weyl
        self.key = (self.hd.rank, self.hd.simple_coroots, self.hd.simple_roots)
        self.rank = self.hd.rank
        self._pos_pairs = [(a.root, a.coroot) for a in self.hd.positive_roots]
        self._pos_coroots = {a.coroot for a in self.hd.positive_roots}
        self._len_cache = {}
        self._word_cache = {}
        self.affine_simple = self._find_affine_simple()
        self.simple = [self.elem((0,) * self.rank, self.W.simple(i)) for i in range(self.hd.semisimple_rank)]
        self.generators = self.simple + self.affine_simple

    # group structure of W_a ------------------------------------------------

    def elem(self, lam, w=0):
        return (tuple(lam), w)

    def translation(self, lam):
        return (tuple(lam), 0)

    def mul(self, x, y):
        (l1, w1), (l2, w2) = x, y
        moved = self.W.act(w1, l2)
        return (tuple(a + b for a, b in zip(l1, moved)), self.W.multiply(w1, w2))

    def inv(self, x):
        lam, w = x
        wi = self.W.inverse(w)
        return (tuple(-c for c in self.W.act(wi, lam)), wi)

    def length(self, x) -> int:
        """Sum over a in Phi'+ of |<a, lam>| if w^-1 a > 0, else |<a, lam> - 1|."""
        out = self._len_cache.get(x)
        if out is not None:
            return out
        lam, w = x
        wi = self.W.inverse(w)
        total = 0
        for root, coroot in self._pos_pairs:
            p = dot(root, lam)
            if self.W.act(wi, coroot) in self._pos_coroots:
                total += abs(p)
            else:
                total += abs(p - 1)
        self._len_cache[x] = total
        return total

    def _components(self):
        l = self.hd.semisimple_rank
        cart = self.hd.cartan
        comp = list(range(l))

        def find(i):
            while comp[i] != i:
                i = comp[i]
            return i

        for i in range(l):
            for j in range(l):
                if cart[i][j]:
                    comp[find(i)] = find(j)
        groups = {}
        for i in range(l):
            groups.setdefault(find(i), []).append(i)
        return list(groups.values())

    def _find_affine_simple(self):
        """t_{a'} s_a for positive a of length 1: one per irreducible component."""
        out = []
        for a in self.hd.positive_roots:
            refl = self._reflection_index(a)
            x = (a.coroot, refl)
            if self.length(x) == 1:
                out.append(x)
        if len(out) != len(self._components()):
            raise AssertionError(
                f"found {len(out)} affine simple reflections for {len(self._components())} components"
            )
        return out

    def _reflection_index(self, a):
        r = self.rank
        cols = []
        for k in range(r):
            e = [int(i == k) for i in range(r)]
            c = dot(a.root, e)
            cols.append([x - c * y for x, y in zip(e, a.coroot)])
        mat = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
        return self.W.index[mat]

    def reduced_decomposition(self, x):
        """(omega, word) with x = omega * s_word[0] * ... * s_word[-1], where
        omega has length 0 and the word indexes ``self.generators``."""
        if x in self._word_cache:
            return self._word_cache[x]
        y = x
        peeled = []
        ly = self.length(y)
        while ly:
            for gi, s in enumerate(self.generators):
                ys = self.mul(y, s)
                lys = self.length(ys)
                if lys < ly:
                    y, ly = ys, lys
                    peeled.append(gi)
                    break
            else:
                raise AssertionError(f"no descent found for {y} of length {ly}")
        out = (y, tuple(reversed(peeled)))
        self._word_cache[x] = out
        return out

    def omega(self) -> list:
        """The length-zero subgroup (finite for semisimple data)."""
        seen = {}
        k = max(2, max(max(abs(c) for c in a.coroot) for a in self.hd.roots) if self.hd.roots else 2)
        for lam in itertools.product(range(-k, k + 1), repeat=self.rank):
            om, _ = self.reduced_decomposition(self.translation(lam))
            seen[om] = True
        return sorted(seen)

    # algebra -------------------------------------------------------------

    def T(self, x, c=1) -> HeckeElement:
        return HeckeElement({x: VPoly._coerce(c)}, self.key)

    def one(self) -> HeckeElement:
        return self.T(self.translation((0,) * self.rank))

    def _times_generator(self, h: HeckeElement, gi: int) -> HeckeElement:
        s = self.generators[gi]
        out = {}
        q = _q()
        for x, c in h.terms.items():
            xs = self.mul(x, s)
            if self.length(xs) > self.length(x):
                out[xs] = out.get(xs, VPoly()) + c
            else:
                out[x] = out.get(x, VPoly()) + c * (q - 1)
                out[xs] = out.get(xs, VPoly()) + c * q
        return HeckeElement({k: v for k, v in out.items() if not v.is_zero}, h.key)

    def _times_omega(self, h: HeckeElement, om) -> HeckeElement:
        return HeckeElement({self.mul(x, om): c for x, c in h.terms.items()}, h.key)

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        _join(a.key, b.key)
        _join(a.key, self.key)
        total = HeckeElement({}, self.key)
        for y, c in b.terms.items():
            om, word = self.reduced_decomposition(y)
            part = self._times_omega(a, om)
            for gi in word:
                part = self._times_generator(part, gi)
            total = total + part.scale(c)
        return total

    def prod(self, *hs: HeckeElement) -> HeckeElement:
        out = hs[0]
        for h in hs[1:]:
            out = self.multiply(out, h)
        return out

    def inverse_T(self, x) -> HeckeElement:
        """T_x^-1 from T_s^-1 = q^-1 (T_s - (q - 1)) and T_omega^-1 = T_omega^-1."""
        om, word = self.reduced_decomposition(x)
        out = self.T(self.inv(om))
        for gi in word:
            s = self.generators[gi]
            sinv = (self.T(s) - self.one().scale(_q() - 1)).scale(_q(-1))
            out = self.multiply(sinv, out)
        return out

    # normalizations ------------------------------------------------------

    def group_length(self, x) -> int:
        """Length of the same element for the covering group's own root
        system: roots of G paired with lam in Y."""
        lam, w = x
        md = self.md
        d = md.datum
        y = md.from_lambda_coords(lam)
        Wg = d.weyl
        wi = Wg.inverse(w)
        pos = {a.coroot for a in d.positive_roots}
        total = 0
        for a in d.positive_roots:
            p = dot(a.root, y)
            total += abs(p) if Wg.act(wi, a.coroot) in pos else abs(p - 1)
        return total

    def paper_scale(self, x) -> int:
        """v-exponent e with T_x(group normalization) = v^e T_x(IM)."""
        return self.group_length(x) - self.length(x)

    def Tp(self, x, c=1) -> HeckeElement:
        """Basis element normalized by volumes in the covering group."""
        return self.T(x, VPoly.v(self.paper_scale(x)) * VPoly._coerce(c))

    def u_scale(self, x) -> int:
        """v-exponent e with U_x = v^e T_x(IM): e = l_W(w) - l(x)."""
        return self.W.length(x[1]) - self.length(x)

    def U(self, x) -> HeckeElement:
        return self.T(x, VPoly.v(self.u_scale(x)))

    def to_U(self, h: HeckeElement) -> dict:
        """Coordinates of h in the U-basis."""
        return {x: c * VPoly.v(-self.u_scale(x)) for x, c in h.terms.items()}

    def lambda_coords_of(self, y):
        return tuple(self.md.lambda_coords(y))

    def random_element(self, rng: random.Random, max_len: int):
        om = self.omega()
        x = rng.choice(om)
        for _ in range(rng.randint(0, max_len)):
            x = self.mul(x, rng.choice(self.generators))
        return x

    def elements_up_to(self, max_len: int) -> list:
        """All elements of length <= max_len (semisimple data)."""
        frontier = set(self.omega())
        seen = set(frontier)
        for _ in range(max_len):
            nxt = set()
            for x in frontier:
                for s in self.generators:
                    y = self.mul(x, s)
                    if y not in seen and self.length(y) <= max_len:
                        nxt.add(y)
            seen |= nxt
            frontier = nxt
        return sorted(seen, key=lambda x: (self.length(x), x))


def affine_length(md: MetaplecticDatum, lam, w: int = 0) -> int:
    """Length of t_lam w in W_a, lam given in Y-coordinates."""
    if not md.in_lambda(lam):
        raise ValueError(f"{list(lam)} is not in Lambda")
    H = HeckeAlgebra(md)
    return H.length((tuple(md.lambda_coords(lam)), w))


def hecke_multiply(H: HeckeAlgebra, x: HeckeElement, y: HeckeElement) -> HeckeElement:
    return H.multiply(x, y)


def bernstein_rescale(x: HeckeElement, md: MetaplecticDatum) -> dict:
    """Coordinates of x (given in the Iwahori-Matsumoto basis) in the U-basis."""
    return HeckeAlgebra(md).to_U(x)


def u_relations_check(md: MetaplecticDatum, height: int = 8) -> list:
    """Rank-one relations rewritten in U-variables:
    U_lam U_s^-1 U_lam = q^-1 U_s when <a^v, lam> = n_a, and
    = q^-1 U_s + (1 - q^-1) U_lam when <a^v, lam> = 2 n_a.
    Neither right-hand side depends on n_a."""
    H = HeckeAlgebra(md)
    d = md.datum
    if d.semisimple_rank != 1:
        raise ValueError("rank-one datum expected")
    q = _q()
    na = md.n_of(d.simple_coroots[0])
    s = H.simple[0]
    us = H.U(s)
    us_inv = (us - H.one().scale(q - 1)).scale(_q(-1))
    out = []
    for y in _dominant_lambda_coords(H, height):
        p = dot(d.simple_roots[0], md.from_lambda_coords(y))
        if p not in (na, 2 * na):
            continue
        ul = H.U(H.translation(y))
        lhs = H.prod(ul, us_inv, ul)
        rhs = us.scale(_q(-1))
        if p == 2 * na:
            rhs = rhs + ul.scale(1 - _q(-1))
        out.append(RelationResult("U(3')" if p == na else "U(4')", f"{y}", lhs == rhs))
    return out


# --- presentation ---------------------------------------------------------


@dataclass
class RelationResult:
    relation: str
    instance: str
    ok: bool


def _dominant_lambda_coords(H: HeckeAlgebra, height: int):
    from metakit.metalattice import dominant_lambda

    return [H.lambda_coords_of(y) for y in dominant_lambda(H.md, height)]


def verify_presentation(md: MetaplecticDatum, height: int = 8, max_len: int = 6,
                        trials: int = 200, seed: int = 0) -> list:
    """Check relations (1)-(6) for the basis normalized by group volumes,
    the quadratic and braid relations of every generator, and associativity."""
    H = HeckeAlgebra(md)
    d = md.datum
    W = H.W
    q = _q()
    results = []
    doms = _dominant_lambda_coords(H, height)
    zero = (0,) * H.rank

    def tl(lam):
        return H.translation(lam)

    def Tp(lam):
        return H.Tp(tl(lam))

    def Ts(i):
        return H.T(H.simple[i])

    def Ts_inv(i):
        return (Ts(i) - H.one().scale(q - 1)).scale(_q(-1))

    # (1) T_lam T_mu = T_{lam + mu}
    for lam in doms:
        for mu in doms:
            lhs = H.multiply(Tp(lam), Tp(mu))
            rhs = Tp(tuple(a + b for a, b in zip(lam, mu)))
            results.append(RelationResult("(1)", f"{lam}+{mu}", lhs == rhs))

    for i, (cor, root) in enumerate(zip(d.simple_coroots, d.simple_roots)):
        na = md.n_of(cor)
        for lam in doms:
            y = md.from_lambda_coords(lam)
            p = dot(root, y)
            # (2) s lam = lam => commute
            if p == 0:
                ok = H.multiply(Ts(i), Tp(lam)) == H.multiply(Tp(lam), Ts(i))
                results.append(RelationResult("(2)", f"s{i},{lam}", ok))
            if p not in (na, 2 * na):
                continue
            lhs = H.prod(Tp(lam), Ts_inv(i), Tp(lam), Ts_inv(i))
            a_step = H.lambda_coords_of([na * x for x in cor])
            two_lam = tuple(2 * x for x in lam)
            m1 = tuple(a - b for a, b in zip(two_lam, a_step))
            if p == na:
                rhs = Tp(m1).scale(_q(na - 1))
                results.append(RelationResult("(3)", f"s{i},{lam}", lhs == rhs))
            else:
                m2 = tuple(a - 2 * b for a, b in zip(two_lam, a_step))
                rhs = Tp(m2).scale(_q(2 * na - 1)) + H.multiply(Tp(m1), Ts_inv(i)).scale((q - 1) * _q(na - 1))
                results.append(RelationResult("(4)", f"s{i},{lam}", lhs == rhs))
            if d.semisimple_rank == 1:
                lhs1 = H.prod(Tp(lam), Ts_inv(i), Tp(lam))
                if p == na:
                    rhs1 = Ts(i).scale(_q(na - 1))
                    results.append(RelationResult("(3')", f"{lam}", lhs1 == rhs1))
                else:
                    rhs1 = Ts(i).scale(_q(2 * na - 1)) + Tp(lam).scale((q - 1) * _q(na - 1))
                    results.append(RelationResult("(4')", f"{lam}", lhs1 == rhs1))

    # (5) quadratic relation for every simple affine reflection
    for gi, s in enumerate(H.generators):
        t = H.T(s)
        lhs = H.multiply(t - H.one().scale(q), t + H.one())
        results.append(RelationResult("(5)", f"generator {gi}", lhs == HeckeElement({}, H.key)))

    # (6) T_{w1 w2} = T_{w1} T_{w2} on the finite Weyl group
    for w1 in range(len(W)):
        for w2 in range(len(W)):
            w12 = W.multiply(w1, w2)
            if W.length(w12) == W.length(w1) + W.length(w2):
                ok = H.multiply(H.T((zero, w1)), H.T((zero, w2))) == H.T((zero, w12))
                results.append(RelationResult("(6)", f"{W.words[w1]}.{W.words[w2]}", ok))

    # braid relations among all generators
    gens = H.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            m = _braid_order(H, gens[i], gens[j])
            if m is None:
                continue
            wi = [gens[i], gens[j]] * m
            wj = [gens[j], gens[i]] * m
            lhs = H.prod(*[H.T(x) for x in wi[:m]])
            rhs = H.prod(*[H.T(x) for x in wj[:m]])
            results.append(RelationResult("braid", f"{i},{j} (m={m})", lhs == rhs))

    rng = random.Random(seed)
    ok = True
    for _ in range(trials):
        a, b, c = (H.T(H.random_element(rng, max_len)) for _ in range(3))
        if H.multiply(H.multiply(a, b), c) != H.multiply(a, H.multiply(b, c)):
            ok = False
            break
    results.append(RelationResult("associativity", f"{trials} triples", ok))
    return results


def _braid_order(H: HeckeAlgebra, s, t):
    x = H.elem((0,) * H.rank)
    for m in range(1, 13):
        x = H.mul(H.mul(x, s), t)
        if x == H.elem((0,) * H.rank):
            return m
    return None


def u_structure_table(md: MetaplecticDatum, max_len: int = 6) -> dict:
    """U-basis structure constants for products U_x U_y with l(x) + l(y) <= max_len.

    Keys and values are written in Y-coordinates so that tables for
    different data with the same dual datum are directly comparable."""
    H = HeckeAlgebra(md)
    elems = H.elements_up_to(max_len)
    Wg = md.datum.weyl

    def label(x):
        lam, w = x
        return (tuple(md.from_lambda_coords(lam)), Wg.words[w])

    table = {}
    for x in elems:
        for y in elems:
            if H.length(x) + H.length(y) > max_len:
                continue
            prod = H.to_U(H.multiply(H.U(x), H.U(y)))
            table[(label(x), label(y))] = {label(z): str(c) for z, c in sorted(prod.items())}
    return table
