"""The tame Hilbert symbol on F^x x F^x for F = F_q((t)).

For s = t^a u_s (...) and t = t^b u_t (...) the symbol (s, t)_m is

    ((-1)^(a b) * u_s^b / u_t^a) ** ((q - 1) / m)

read in mu_m.  Only valuations and leading units enter.
"""

from __future__ import annotations

import random

from metakit.arith import FieldMismatchError, LaurentNumber, MuElement, PrimeField, prime_field

__all__ = ["tame_symbol", "hilbert_symbol", "tame_residue", "hilbert_suite", "random_nonzero"]


def tame_residue(va: int, ua: int, vb: int, ub: int, fld: PrimeField) -> int:
    """The residue (-1)^(va vb) ua^vb ub^(-va) in F_q^x."""
    q = fld.q
    if ua % q == 0 or ub % q == 0:
        raise ValueError("leading coefficients must be units")
    sign = q - 1 if (va * vb) % 2 else 1
    return sign * pow(ua, vb, q) * pow(ub, -va, q) % q


def tame_symbol(va: int, ua: int, vb: int, ub: int, m: int, fld: PrimeField) -> MuElement:
    """(s, t)_m from (valuation, leading unit) pairs."""
    fld.require_order(m)
    return MuElement(m, fld.log(tame_residue(va, ua, vb, ub, fld)))


def hilbert_symbol(s: LaurentNumber, t: LaurentNumber, m: int) -> MuElement:
    """(s, t)_m in mu_m; raises on zero or undecidable inputs."""
    if s.field != t.field:
        raise FieldMismatchError(f"F_{s.q} vs F_{t.q}")
    va, ua = s.leading()
    vb, ub = t.leading()
    return tame_symbol(va, ua, vb, ub, m, s.field)


def _random_unit_series(rng, fld: PrimeField, val: int, length: int) -> LaurentNumber:
    coeffs = [rng.randrange(1, fld.q)] + [rng.randrange(fld.q) for _ in range(length - 1)]
    aprec = val + length if rng.random() < 0.5 else None
    return LaurentNumber.from_coeffs(fld, val, coeffs, aprec=aprec)


def random_nonzero(rng, fld: PrimeField, spread: int = 4, length: int = 4) -> LaurentNumber:
    """A random element of F^x, sometimes exact and sometimes truncated."""
    return _random_unit_series(rng, fld, rng.randint(-spread, spread), length)


def hilbert_suite(q: int, m: int, trials: int = 1000, seed: int = 0) -> dict:
    """Property checks of (s, t)_m on ``trials`` random inputs.

    Returns {property: {"ok": bool, "counterexample": str | None}}.
    """
    fld = prime_field(q)
    fld.require_order(m)
    rng = random.Random(seed)
    one = LaurentNumber.const(fld, 1)
    names = [
        "bilinearity",
        "antisymmetry",
        "(t,-t)=1",
        "(t,1-t)=1",
        "(-1,x)=1",
        "(pi^a,pi^b)=1",
        "unit-triviality",
    ]
    out = {k: {"ok": True, "counterexample": None} for k in names}

    def fail(name, *xs):
        if out[name]["ok"]:
            out[name] = {"ok": False, "counterexample": ", ".join(str(x) for x in xs)}

    def sym(a, b):
        return hilbert_symbol(a, b, m)

    for _ in range(trials):
        s1, s2, t = (random_nonzero(rng, fld) for _ in range(3))
        if sym(s1 * s2, t) != sym(s1, t) * sym(s2, t) or sym(t, s1 * s2) != sym(t, s1) * sym(t, s2):
            fail("bilinearity", s1, s2, t)
        if not (sym(s1, t) * sym(t, s1)).is_identity:
            fail("antisymmetry", s1, t)
        if not sym(t, -t).is_identity:
            fail("(t,-t)=1", t)
        u = one - t
        # 1 - t is only usable when its leading term is known
        if not u.is_zero and not sym(t, u).is_identity:
            fail("(t,1-t)=1", t)
        if not sym(-one, s1).is_identity:
            fail("(-1,x)=1", s1)
        a, b = rng.randint(-6, 6), rng.randint(-6, 6)
        if not sym(LaurentNumber.monomial(fld, 1, a), LaurentNumber.monomial(fld, 1, b)).is_identity:
            fail("(pi^a,pi^b)=1", a, b)
        u1, u2 = _random_unit_series(rng, fld, 0, 3), _random_unit_series(rng, fld, 0, 3)
        if not sym(u1, u2).is_identity:
            fail("unit-triviality", u1, u2)
    return out
