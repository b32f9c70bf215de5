"""Scalar rings: Z[v, v^-1] with rational coefficients (v^2 = q), and its
extension by n-th roots of unity used while summing genuine characters.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

__all__ = ["VPoly", "XPoly", "CycloSum", "cyclotomic_poly"]


class VPoly:
    """A finite sum sum_k c_k v^k with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(k)] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> "VPoly":
        return cls({0: c})

    @classmethod
    def v(cls, k: int = 1, c=1) -> "VPoly":
        return cls({k: c})

    @classmethod
    def q(cls, k=1, c=1) -> "VPoly":
        """c q^k; k may be a half-integer Fraction."""
        e = Fraction(k) * 2
        if e.denominator != 1:
            raise ValueError("q exponent must be a half-integer")
        return cls({int(e): c})

    @staticmethod
    def _coerce(x) -> "VPoly":
        if isinstance(x, VPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return VPoly.const(x)
        return NotImplemented

    def __add__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, 0) + c
        return VPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return VPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return VPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = VPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "VPoly":
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit in Q[v, v^-1]")
        (k, c), = self.terms.items()
        return VPoly({-k: 1 / c})

    def __truediv__(self, o):
        o = self._coerce(o)
        return self * o.inverse()

    def __eq__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return False
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, v):
        return sum(c * v**k for k, c in self.terms.items())

    def at_q(self, q: int) -> Fraction:
        """Value at v = sqrt(q); requires only even powers of v."""
        if any(k % 2 for k in self.terms):
            raise ValueError(f"{self} has odd powers of v")
        return sum((c * Fraction(q) ** (k // 2) for k, c in self.terms.items()), Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "" if k == 0 else ("v" if k == 1 else f"v^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (constant term first) of the n-th cyclotomic
    polynomial, by dividing x^n - 1 by Phi_d for the proper divisors d."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_exact_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return out


class CycloSum:
    """sum_e c_e zeta_n^e with VPoly coefficients, zeta_n a primitive n-th root
    of unity.  ``reduced`` gives the canonical form modulo Phi_n."""

    def __init__(self, n: int):
        self.n = n
        self.coeffs = [VPoly() for _ in range(n)]

    def add(self, exp: int, c) -> None:
        self.coeffs[exp % self.n] = self.coeffs[exp % self.n] + c

    def reduced(self) -> list:
        phi = cyclotomic_poly(self.n)
        deg = len(phi) - 1
        work = list(self.coeffs)
        for i in range(len(work) - 1, deg - 1, -1):
            c = work[i]
            if c.is_zero:
                continue
            # x^i = x^(i-deg) * (x^deg) and x^deg = -sum_{j<deg} phi_j x^j
            for j in range(deg):
                if phi[j]:
                    work[i - deg + j] = work[i - deg + j] - c * phi[j]
            work[i] = VPoly()
        return work[:deg]

    def rational_value(self):
        """The value when it lies in Q[v^+-1], else None."""
        red = self.reduced()
        if all(c.is_zero for c in red[1:]):
            return red[0]
        return None


class XPoly:
    """Polynomial in one formal variable x with VPoly coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = VPoly._coerce(c)
                if not c.is_zero:
                    clean[int(k)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, k: int, c=1) -> "XPoly":
        return cls({k: c})

    def __add__(self, o):
        o = o if isinstance(o, XPoly) else XPoly({0: o})
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, VPoly()) + c
        return XPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return XPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        o = o if isinstance(o, XPoly) else XPoly({0: o})
        return self + (-o)

    def __rsub__(self, o):
        return XPoly({0: o}) - self

    def __mul__(self, o):
        o = o if isinstance(o, XPoly) else XPoly({0: o})
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                out[k1 + k2] = out.get(k1 + k2, VPoly()) + c1 * c2
        return XPoly(out)

    __rmul__ = __mul__

    def __eq__(self, o):
        o = o if isinstance(o, XPoly) else XPoly({0: o})
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = str(self.terms[k])
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            parts.append(c if not mono else f"({c})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__
