"""Exact arithmetic for the model local field F_q((t)).

Three value types live here:

* :class:`PrimeField` -- residues mod a prime ``q`` with a discrete-log table
  for the smallest primitive root.
* :class:`MuElement` -- an element of the cyclic group mu_m inside F_q^x,
  stored as an exponent of ``zeta_m = g**((q-1)/m)``.
* :class:`LaurentNumber` -- a truncated Laurent series over F_q.  Elements are
  either *exact* (finitely many terms, no error term) or carry an absolute
  precision ``aprec`` meaning the value is only known modulo ``t**aprec``.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from metakit import _kernels

__all__ = [
    "PrecisionError",
    "FieldMismatchError",
    "PrimeField",
    "prime_field",
    "MuElement",
    "LaurentNumber",
    "unit_to_mu",
    "valuation_leading",
    "laurent_mul",
    "laurent_inv",
    "parse_laurent",
]


class PrecisionError(ArithmeticError):
    """Raised when a value cannot be decided at the available precision."""


class FieldMismatchError(ValueError):
    """Raised when operands live over different residue fields."""


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            return False
    return True


@dataclass(frozen=True, eq=False)
class PrimeField:
    """The residue field F_q for a prime ``q``."""

    q: int
    generator: int = dc_field(init=False)
    dlog: np.ndarray = dc_field(init=False, repr=False)

    def __post_init__(self):
        q = self.q
        if not _is_prime(q):
            raise ValueError(f"q = {q} is not prime")
        order = q - 1
        factors = {p for p in range(2, order + 1) if order % p == 0 and _is_prime(p)}
        g = 1 if q == 2 else next(
            c for c in range(2, q) if all(pow(c, order // p, q) != 1 for p in factors)
        )
        table = np.full(q, -1, dtype=np.int64)
        x = 1
        for k in range(order):
            table[x] = k
            x = x * g % q
        table.setflags(write=False)
        object.__setattr__(self, "generator", g)
        object.__setattr__(self, "dlog", table)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("PrimeField", self.q))

    def log(self, u: int) -> int:
        u %= self.q
        if u == 0:
            raise ValueError("discrete log of zero")
        return int(self.dlog[u])

    def inv(self, u: int) -> int:
        u %= self.q
        if u == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return pow(u, self.q - 2, self.q)

    def zeta(self, m: int) -> int:
        """The fixed generator g**((q-1)/m) of mu_m."""
        self.require_order(m)
        return pow(self.generator, (self.q - 1) // m, self.q)

    def require_order(self, m: int) -> None:
        if m < 1 or (self.q - 1) % m:
            raise ValueError(f"mu_{m} is not contained in F_{self.q}^x ({m} does not divide {self.q - 1})")

    def require_cover_degree(self, n: int) -> None:
        """Standing assumption for a degree-n cover: 2n divides q - 1."""
        if n < 1 or (self.q - 1) % (2 * n):
            raise ValueError(f"2n = {2 * n} does not divide q - 1 = {self.q - 1}")


@functools.lru_cache(maxsize=None)
def prime_field(q: int) -> PrimeField:
    return PrimeField(q)


@dataclass(frozen=True)
class MuElement:
    """zeta_m**exp in mu_m, with zeta_m the field's fixed generator of mu_m."""

    order: int
    exp: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "exp", self.exp % self.order)

    @classmethod
    def identity(cls, m: int) -> "MuElement":
        return cls(m, 0)

    def _check(self, other: "MuElement") -> None:
        if not isinstance(other, MuElement) or other.order != self.order:
            raise ValueError(f"cannot combine mu_{self.order} with {other!r}")

    def __mul__(self, other: "MuElement") -> "MuElement":
        self._check(other)
        return MuElement(self.order, self.exp + other.exp)

    def __truediv__(self, other: "MuElement") -> "MuElement":
        self._check(other)
        return MuElement(self.order, self.exp - other.exp)

    def __pow__(self, k: int) -> "MuElement":
        return MuElement(self.order, self.exp * k)

    def inverse(self) -> "MuElement":
        return MuElement(self.order, -self.exp)

    @property
    def is_identity(self) -> bool:
        return self.exp == 0

    def embed(self, k: int) -> "MuElement":
        """Image in mu_{k m}; zeta_m = zeta_{km}**k."""
        return MuElement(self.order * k, self.exp * k)

    def restrict(self, m: int) -> "MuElement":
        """View as an element of the subgroup mu_m (m | order)."""
        if self.order % m:
            raise ValueError(f"mu_{m} is not a subgroup of mu_{self.order}")
        k = self.order // m
        if self.exp % k:
            raise ValueError(f"{self} does not lie in mu_{m}")
        return MuElement(m, self.exp // k)

    def value(self, fld: PrimeField) -> int:
        """The residue in F_q represented by this root of unity."""
        return pow(fld.zeta(self.order), self.exp, fld.q)


def unit_to_mu(u: int, m: int, fld: PrimeField) -> MuElement:
    """u**((q-1)/m) as an element of mu_m."""
    fld.require_order(m)
    if u % fld.q == 0:
        raise ValueError("unit_to_mu of zero")
    return MuElement(m, fld.log(u))


_EMPTY = np.zeros(0, dtype=np.int64)


def _frozen(arr) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class LaurentNumber:
    """A Laurent series over F_q, exact or known modulo ``t**aprec``.

    ``val`` is ``None`` for zero.  For nonzero values ``coeffs[0] != 0`` and
    the value is ``t**val * sum(coeffs[i] t**i)``.  ``aprec is None`` marks an
    exact value; otherwise ``len(coeffs) == aprec - val``.
    """

    __slots__ = ("field", "val", "coeffs", "aprec")

    def __init__(self, fld: PrimeField, val, coeffs, aprec):
        self.field = fld
        self.val = val
        self.coeffs = coeffs
        self.aprec = aprec

    # construction -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, fld: PrimeField, start: int, coeffs, aprec=None) -> "LaurentNumber":
        """Normalize ``t**start * sum(coeffs[i] t**i)`` (+ O(t**aprec))."""
        c = np.asarray(coeffs, dtype=np.int64) % fld.q
        if aprec is not None:
            keep = max(0, aprec - start)
            if c.size < keep:
                c = np.concatenate([c, np.zeros(keep - c.size, dtype=np.int64)])
            c = c[:keep]
        nz = np.flatnonzero(c)
        if nz.size == 0:
            return cls(fld, None, _EMPTY, aprec)
        lo = int(nz[0])
        if aprec is None:
            c = c[lo : int(nz[-1]) + 1]
        else:
            c = c[lo:]
        return cls(fld, start + lo, _frozen(c), aprec)

    @classmethod
    def zero(cls, fld: PrimeField, aprec=None) -> "LaurentNumber":
        return cls(fld, None, _EMPTY, aprec)

    @classmethod
    def monomial(cls, fld: PrimeField, c: int, k: int = 0, aprec=None) -> "LaurentNumber":
        return cls.from_coeffs(fld, k, [c], aprec)

    @classmethod
    def const(cls, fld: PrimeField, c: int) -> "LaurentNumber":
        return cls.monomial(fld, c, 0)

    @classmethod
    def parse(cls, text: str, fld: PrimeField) -> "LaurentNumber":
        return parse_laurent(text, fld)

    # inspection ---------------------------------------------------------

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def exact(self) -> bool:
        return self.aprec is None

    @property
    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known (exact or truncated zero)."""
        return self.val is None

    @property
    def prec(self):
        """Number of known coefficients (relative precision); None if exact."""
        if self.aprec is None:
            return None
        if self.val is None:
            return 0
        return self.aprec - self.val

    def is_decided_zero(self) -> bool:
        """Decide ``self == 0``; raises :class:`PrecisionError` when undecidable."""
        if self.val is not None:
            return False
        if self.aprec is None:
            return True
        raise PrecisionError(f"cannot decide whether O(t^{self.aprec}) is zero")

    def leading(self):
        """(valuation, leading coefficient); raises on zero."""
        if self.val is None:
            if self.aprec is None:
                raise ValueError("valuation of zero")
            raise PrecisionError(f"no nonzero coefficient known below t^{self.aprec}")
        return self.val, int(self.coeffs[0])

    def coefficient(self, k: int) -> int:
        if self.aprec is not None and k >= self.aprec:
            raise PrecisionError(f"coefficient of t^{k} unknown (precision t^{self.aprec})")
        if self.val is None or k < self.val:
            return 0
        i = k - self.val
        return int(self.coeffs[i]) if i < self.coeffs.size else 0

    def _check(self, other: "LaurentNumber") -> None:
        if not isinstance(other, LaurentNumber):
            raise TypeError(f"expected LaurentNumber, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"F_{self.q} vs F_{other.q}")

    def _lift(self, other):
        if isinstance(other, int):
            return LaurentNumber.const(self.field, other)
        return other

    # arithmetic ---------------------------------------------------------

    def __neg__(self) -> "LaurentNumber":
        if self.val is None:
            return self
        return LaurentNumber(self.field, self.val, _frozen((-self.coeffs) % self.q), self.aprec)

    def __add__(self, other) -> "LaurentNumber":
        other = self._lift(other)
        self._check(other)
        aprec = _min_prec(self.aprec, other.aprec)
        terms = [x for x in (self, other) if x.val is not None]
        if not terms:
            return LaurentNumber.zero(self.field, aprec)
        lo = min(x.val for x in terms)
        hi = aprec if aprec is not None else max(x.val + x.coeffs.size for x in terms)
        if hi <= lo:
            return LaurentNumber.zero(self.field, aprec)
        buf = np.zeros(hi - lo, dtype=np.int64)
        for x in terms:
            off = x.val - lo
            if off >= buf.size:
                continue
            seg = x.coeffs[: buf.size - off]
            buf[off : off + seg.size] += seg
        return LaurentNumber.from_coeffs(self.field, lo, buf, aprec)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentNumber":
        other = self._lift(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentNumber":
        return self._lift(other) + (-self)

    def __mul__(self, other) -> "LaurentNumber":
        other = self._lift(other)
        self._check(other)
        return laurent_mul(self, other)

    __rmul__ = __mul__

    def inv(self, prec=None) -> "LaurentNumber":
        return laurent_inv(self, prec)

    def __truediv__(self, other) -> "LaurentNumber":
        other = self._lift(other)
        self._check(other)
        return self * other.inv(self.prec)

    def __pow__(self, k: int) -> "LaurentNumber":
        if k < 0:
            return self.inv() ** (-k)
        out = LaurentNumber.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def truncate(self, aprec: int) -> "LaurentNumber":
        """Forget everything at and above t**aprec."""
        aprec = _min_prec(self.aprec, aprec)
        if self.val is None:
            return LaurentNumber.zero(self.field, aprec)
        return LaurentNumber.from_coeffs(self.field, self.val, self.coeffs, aprec)

    def agrees_with(self, other) -> bool:
        """True when the two values are equal to the precision both carry."""
        other = self._lift(other)
        return (self - other).val is None

    # comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentNumber.const(self.field, other)
        if not isinstance(other, LaurentNumber):
            return NotImplemented
        return (
            self.field == other.field
            and self.val == other.val
            and self.aprec == other.aprec
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.q, self.val, self.aprec, tuple(int(c) for c in self.coeffs)))

    def __str__(self):
        parts = []
        if self.val is not None:
            for i, c in enumerate(self.coeffs):
                c = int(c)
                if c == 0:
                    continue
                k = self.val + i
                if k == 0:
                    parts.append(str(c))
                else:
                    mono = "t" if k == 1 else f"t^{k}"
                    parts.append(mono if c == 1 else f"{c}*{mono}")
        if self.aprec is not None:
            parts.append(f"O(t^{self.aprec})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"LaurentNumber(F_{self.q}: {self})"


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def laurent_mul(a: LaurentNumber, b: LaurentNumber) -> LaurentNumber:
    """Product with precision propagation; valuations add."""
    if a.field != b.field:
        raise FieldMismatchError(f"F_{a.q} vs F_{b.q}")
    fld = a.field
    if a.val is None or b.val is None:
        if (a.val is None and a.aprec is None) or (b.val is None and b.aprec is None):
            return LaurentNumber.zero(fld)
        # at least one truncated zero
        bounds = []
        for z, other in ((a, b), (b, a)):
            if z.val is None:
                shift = other.val if other.val is not None else other.aprec
                bounds.append(z.aprec + shift)
        return LaurentNumber.zero(fld, min(bounds))
    val = a.val + b.val
    if a.aprec is None and b.aprec is None:
        c = np.convolve(a.coeffs, b.coeffs) % fld.q
        return LaurentNumber.from_coeffs(fld, val, c)
    n = min(p for p in (a.prec, b.prec) if p is not None)
    c = _kernels.series_mul(a.coeffs, b.coeffs, n, fld.q)
    return LaurentNumber.from_coeffs(fld, val, c, val + n)


def laurent_inv(a: LaurentNumber, prec=None) -> LaurentNumber:
    """Multiplicative inverse.

    Exact monomials invert exactly.  Other exact values need an explicit
    relative precision ``prec``; truncated values keep their own.
    """
    if a.val is None:
        raise ZeroDivisionError("inverse of zero")
    fld = a.field
    if a.aprec is None and a.coeffs.size == 1:
        return LaurentNumber.monomial(fld, fld.inv(int(a.coeffs[0])), -a.val)
    n = a.prec if a.prec is not None else prec
    if n is None:
        raise PrecisionError(f"inverse of exact non-monomial {a} needs a precision")
    if n < 1:
        raise PrecisionError("inverse needs precision >= 1")
    c = _kernels.series_inv(a.coeffs, n, fld.q)
    return LaurentNumber.from_coeffs(fld, -a.val, c, -a.val + n)


def valuation_leading(a: LaurentNumber):
    return a.leading()


_TOKEN = re.compile(
    r"\s*(?:(?P<O>O\(\s*(?:t(?:\s*\^\s*(?P<oexp>-?\d+))?|(?P<one>1))\s*\))"
    r"|(?P<term>(?:(?P<coef>\d+)\s*\*\s*)?t(?:\s*\^\s*(?P<exp>-?\d+))?|(?P<const>\d+)))\s*"
)


def parse_laurent(text: str, fld: PrimeField) -> LaurentNumber:
    """Parse literals such as ``3*t^-1 + 1 + 2*t + O(t^5)``."""
    pos = 0
    sign = 1
    terms: dict[int, int] = {}
    aprec = None
    expect_term = True
    s = text.strip()
    if not s:
        raise ValueError("empty Laurent literal")
    while pos < len(s):
        if not expect_term:
            op = s[pos]
            if op not in "+-":
                raise ValueError(f"expected '+' or '-' at column {pos + 1} in {text!r}")
            sign = 1 if op == "+" else -1
            pos += 1
            expect_term = True
            continue
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            if s[pos] == "-" and pos == 0:
                sign = -1
                pos += 1
                continue
            raise ValueError(f"bad term at column {pos + 1} in {text!r}")
        if aprec is not None:
            raise ValueError("O(t^k) must be the last term")
        if m.group("O"):
            if sign != 1:
                raise ValueError("error term must be added, not subtracted")
            if m.group("one"):
                aprec = 0
            else:
                aprec = int(m.group("oexp")) if m.group("oexp") else 1
        elif m.group("const") is not None:
            terms[0] = terms.get(0, 0) + sign * int(m.group("const"))
        else:
            c = int(m.group("coef")) if m.group("coef") else 1
            k = int(m.group("exp")) if m.group("exp") else 1
            terms[k] = terms.get(k, 0) + sign * c
        pos = m.end()
        expect_term = False
    if expect_term:
        raise ValueError(f"dangling operator in {text!r}")
    if not terms:
        return LaurentNumber.zero(fld, aprec)
    lo = min(terms)
    hi = max(terms)
    buf = [0] * (hi - lo + 1)
    for k, c in terms.items():
        buf[k - lo] = c
    return LaurentNumber.from_coeffs(fld, lo, buf, aprec)
