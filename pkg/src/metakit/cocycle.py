"""Explicit cocycles: the mu_2n torus cocycle attached to B, its commutator,
and the Kubota cocycle on SL_2 with its splitting over SL_2(O).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from metakit.arith import LaurentNumber, MuElement, PrecisionError, PrimeField
from metakit.hilbert import hilbert_symbol, tame_symbol

__all__ = [
    "torus_cocycle",
    "torus_commutator",
    "commutator_formula",
    "SL2Element",
    "MetaSL2Element",
    "KubotaCover",
    "kubota_sigma",
    "kubota_kappa",
    "meta_mul",
    "random_laurent_poly",
    "random_sl2",
    "random_sl2_integral",
    "kubota_suite",
]


# --- torus ---------------------------------------------------------------


def _q_coeffs(md):
    """q_ij with B(y, y) = sum_{i<=j} q_ij y_i y_j."""
    r = md.datum.rank
    return {(i, j): (md.B[i][i] if i == j else 2 * md.B[i][j]) for i in range(r) for j in range(i, r)}


def torus_cocycle(s, t, md) -> MuElement:
    """sigma(s, t) = prod_{i<=j} (s_i, t_j)_{2n}^{q_ij} in mu_2n."""
    m = 2 * md.n
    out = MuElement.identity(m)
    for (i, j), qij in _q_coeffs(md).items():
        if qij:
            out = out * hilbert_symbol(s[i], t[j], m) ** qij
    return out


def torus_commutator(s, t, md) -> MuElement:
    """sigma(s, t) / sigma(t, s), certified to lie in mu_n."""
    c = torus_cocycle(s, t, md) / torus_cocycle(t, s, md)
    return c.restrict(md.n)


def commutator_formula(s, t, md) -> MuElement:
    """prod_{i,j} (s_i, t_j)_n^{b_ij}."""
    r = md.datum.rank
    out = MuElement.identity(md.n)
    for i in range(r):
        for j in range(r):
            if md.B[i][j]:
                out = out * hilbert_symbol(s[i], t[j], md.n) ** md.B[i][j]
    return out


# --- SL_2 ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SL2Element:
    a: LaurentNumber
    b: LaurentNumber
    c: LaurentNumber
    d: LaurentNumber

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not det.agrees_with(1):
            raise ValueError(f"determinant {det} is not 1")

    @property
    def field(self) -> PrimeField:
        return self.a.field

    @classmethod
    def of(cls, fld: PrimeField, a, b, c, d) -> "SL2Element":
        def lift(x):
            return x if isinstance(x, LaurentNumber) else LaurentNumber.const(fld, x)

        return cls(lift(a), lift(b), lift(c), lift(d))

    @classmethod
    def identity(cls, fld):
        return cls.of(fld, 1, 0, 0, 1)

    @classmethod
    def w(cls, fld):
        """(0 1; -1 0)."""
        return cls.of(fld, 0, 1, -1, 0)

    @classmethod
    def w_inv(cls, fld):
        return cls.of(fld, 0, -1, 1, 0)

    @classmethod
    def upper(cls, u: LaurentNumber):
        """e(u) = (1 u; 0 1)."""
        return cls.of(u.field, 1, u, 0, 1)

    @classmethod
    def lower(cls, u: LaurentNumber):
        """(1 0; u 1)."""
        return cls.of(u.field, 1, 0, u, 1)

    @classmethod
    def diag(cls, x: LaurentNumber):
        return cls.of(x.field, x, 0, 0, x.inv())

    @classmethod
    def torus(cls, fld, c: int, k: int):
        """diag(c t^k, c^-1 t^-k)."""
        return cls.diag(LaurentNumber.monomial(fld, c, k))

    def __matmul__(self, o: "SL2Element") -> "SL2Element":
        return SL2Element(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "SL2Element":
        return SL2Element(self.d, -self.b, -self.c, self.a)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def x(self):
        """(valuation, leading unit) of c, or of d when c = 0."""
        e = self.d if self.c.is_decided_zero() else self.c
        return e.leading()

    def is_integral(self) -> bool:
        for e in self.entries():
            if e.val is None:
                if e.aprec is not None and e.aprec < 0:
                    raise PrecisionError("cannot decide integrality")
                continue
            if e.val < 0:
                return False
        return True

    def agrees_with(self, o: "SL2Element") -> bool:
        return all(x.agrees_with(y) for x, y in zip(self.entries(), o.entries()))

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def kubota_sigma(g: SL2Element, h: SL2Element, q_val: int, n: int) -> MuElement:
    """(x(gh)/x(g), x(gh)/x(h))_n^Q."""
    fld = g.field
    vg, ug = g.x()
    vh, uh = h.x()
    vgh, ugh = (g @ h).x()
    return tame_symbol(vgh - vg, ugh * fld.inv(ug), vgh - vh, ugh * fld.inv(uh), n, fld) ** q_val


def kubota_kappa(k: SL2Element, q_val: int, n: int) -> MuElement:
    """(c, d)_n^Q when 0 < |c| < 1, else 1.  Requires k in SL_2(O)."""
    if not k.is_integral():
        raise ValueError("kappa is only defined on SL_2(O)")
    if k.c.is_decided_zero() or k.c.val == 0:
        return MuElement.identity(n)
    return hilbert_symbol(k.c, k.d, n) ** q_val


@dataclass(frozen=True, eq=False)
class MetaSL2Element:
    g: SL2Element
    zeta: MuElement

    def __str__(self):
        return f"({self.g}, zeta^{self.zeta.exp})"


def meta_mul(x: MetaSL2Element, y: MetaSL2Element, q_val: int, n: int) -> MetaSL2Element:
    return MetaSL2Element(x.g @ y.g, x.zeta * y.zeta * kubota_sigma(x.g, y.g, q_val, n))


@dataclass(frozen=True)
class KubotaCover:
    """The degree-n cover of SL_2(F_q((t))) defined by Q(alpha) = ``Q``."""

    fld: PrimeField
    n: int
    Q: int

    def __post_init__(self):
        self.fld.require_cover_degree(self.n)

    def sigma(self, g, h) -> MuElement:
        return kubota_sigma(g, h, self.Q, self.n)

    def kappa(self, k) -> MuElement:
        return kubota_kappa(k, self.Q, self.n)

    def mul(self, *xs: MetaSL2Element) -> MetaSL2Element:
        out = xs[0]
        for y in xs[1:]:
            out = meta_mul(out, y, self.Q, self.n)
        return out

    def lift(self, g: SL2Element, exp: int = 0) -> MetaSL2Element:
        return MetaSL2Element(g, MuElement(self.n, exp))

    def lift_k(self, k: SL2Element) -> MetaSL2Element:
        """The splitting k -> (k, kappa(k)) of SL_2(O)."""
        return MetaSL2Element(k, self.kappa(k))

    def pi(self, l: int) -> MetaSL2Element:
        """s(pi^lambda) for lambda = l alpha: diag(t^l, t^-l) with trivial mu_n part."""
        return self.lift(SL2Element.torus(self.fld, 1, l))

    def inverse(self, x: MetaSL2Element) -> MetaSL2Element:
        gi = x.g.inverse()
        return MetaSL2Element(gi, (x.zeta * self.sigma(x.g, gi)).inverse())


# --- random exact elements ------------------------------------------------


def random_laurent_poly(rng: random.Random, fld: PrimeField, lo: int, hi: int, nonzero=False) -> LaurentNumber:
    """Exact Laurent polynomial with exponents in [lo, hi]."""
    while True:
        coeffs = [rng.randrange(fld.q) for _ in range(hi - lo + 1)]
        x = LaurentNumber.from_coeffs(fld, lo, coeffs)
        if not nonzero or not x.is_zero:
            return x


def random_sl2(rng: random.Random, fld: PrimeField, depth: int = 4, spread: int = 2) -> SL2Element:
    """Exact random element of SL_2(F) as a word in e, e^-, w and the torus."""
    g = SL2Element.identity(fld)
    for _ in range(depth):
        kind = rng.randrange(4)
        if kind == 0:
            g = g @ SL2Element.upper(random_laurent_poly(rng, fld, -spread, spread))
        elif kind == 1:
            g = g @ SL2Element.lower(random_laurent_poly(rng, fld, -spread, spread))
        elif kind == 2:
            g = g @ SL2Element.torus(fld, rng.randrange(1, fld.q), rng.randint(-spread, spread))
        else:
            g = g @ SL2Element.w(fld)
    return g


def random_sl2_integral(rng: random.Random, fld: PrimeField, depth: int = 4, spread: int = 2) -> SL2Element:
    """Exact random element of SL_2(O)."""
    g = SL2Element.identity(fld)
    for _ in range(depth):
        kind = rng.randrange(4)
        if kind == 0:
            g = g @ SL2Element.upper(random_laurent_poly(rng, fld, 0, spread))
        elif kind == 1:
            g = g @ SL2Element.lower(random_laurent_poly(rng, fld, 0, spread))
        elif kind == 2:
            g = g @ SL2Element.torus(fld, rng.randrange(1, fld.q), 0)
        else:
            g = g @ SL2Element.w(fld)
    return g


def kubota_suite(q: int, n: int, Q: int, trials: int = 500, seed: int = 0) -> dict:
    """Cocycle identity, kappa-splitting and the diagonal commutator on
    ``trials`` random inputs.  Returns {identity: {"ok", "counterexample"}}."""
    from metakit.arith import prime_field

    fld = prime_field(q)
    cover = KubotaCover(fld, n, Q)
    rng = random.Random(seed)
    out = {}

    bad = None
    for _ in range(trials):
        g, h, k = (random_sl2(rng, fld) for _ in range(3))
        lhs = cover.sigma(g, h) * cover.sigma(g @ h, k)
        rhs = cover.sigma(g, h @ k) * cover.sigma(h, k)
        if lhs != rhs:
            bad = f"g={g}, h={h}, k={k}"
            break
    out["cocycle"] = {"ok": bad is None, "counterexample": bad}

    bad = None
    for _ in range(trials):
        k1, k2 = random_sl2_integral(rng, fld), random_sl2_integral(rng, fld)
        # k -> (k, kappa(k)) is a homomorphism: kappa(k1) kappa(k2) sigma(k1, k2) = kappa(k1 k2)
        if cover.kappa(k1) * cover.kappa(k2) * cover.sigma(k1, k2) != cover.kappa(k1 @ k2):
            bad = f"k1={k1}, k2={k2}"
            break
    out["kappa-splitting"] = {"ok": bad is None, "counterexample": bad}

    bad = None
    inverse_law = True
    for _ in range(trials):
        # truncated series so that the inverse on the diagonal is defined
        x, y = (
            LaurentNumber.from_coeffs(fld, v, [rng.randrange(1, q)] + [rng.randrange(q) for _ in range(5)], aprec=v + 6)
            for v in (rng.randint(-4, 4), rng.randint(-4, 4))
        )
        hx, hy = cover.lift(SL2Element.diag(x)), cover.lift(SL2Element.diag(y))
        c = cover.sigma(hx.g, hy.g) / cover.sigma(hy.g, hx.g)
        assert c == cover.mul(hx, hy, cover.inverse(hx), cover.inverse(hy)).zeta
        expected = hilbert_symbol(x, y, n) ** (2 * Q)
        if c != expected.inverse():
            inverse_law = False
        if c != expected and bad is None:
            bad = f"x={x}, y={y}: commutator exponent {c.exp}, (x,y)^2Q exponent {expected.exp}"
    out["diagonal-commutator"] = {
        "ok": bad is None,
        "counterexample": bad,
        # what the Kubota formula actually yields: sigma(h(x), h(y)) = (y, x)^Q
        "matches_inverse": inverse_law,
    }
    return out
