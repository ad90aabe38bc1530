"""Dense univariate polynomials over an exact field.

Coefficients are ``fractions.Fraction`` or any exact field scalar that
supports ``+ - * /``, truthiness as a zero test, and (where signs are
needed) a ``sign()`` method.  The zero polynomial has an empty
coefficient tuple and degree -1.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Sequence


def coerce_scalar(x):
    """Map ints to Fraction; leave exact field scalars untouched."""
    if isinstance(x, int):
        return Fraction(x)
    return x


def scalar_sign(x) -> int:
    """Sign (-1, 0, 1) of an exact scalar."""
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    return x.sign()


def scalar_is_rational(x) -> bool:
    return isinstance(x, Fraction)


def scalar_abs_upper(x) -> Fraction:
    """A rational upper bound for abs(x)."""
    if isinstance(x, Fraction):
        return abs(x)
    lo, hi = x.approx_interval()
    return max(abs(lo), abs(hi))


class Poly:
    """Polynomial sum(c[i] * x**i), immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [coerce_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c) -> "Poly":
        return Poly([c])

    @staticmethod
    def monomial(k: int, c=1) -> "Poly":
        return Poly([0] * k + [c])

    @staticmethod
    def variable() -> "Poly":
        return Poly([0, 1])

    # -- basic structure -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def constant(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[0]

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = coerce_scalar(c)
        return Poly([a * c for a in self.coeffs])

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        inv_lead = _scalar_inv(other.leading())
        quot = [Fraction(0)] * (dq + 1)
        ob = other.coeffs
        for k in range(dq, -1, -1):
            top = rem[k + len(ob) - 1]
            if not top:
                continue
            q = top * inv_lead
            quot[k] = q
            for i, c in enumerate(ob):
                rem[k + i] = rem[k + i] - q * c
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(_as_poly(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("exact_div with nonzero remainder")
        return q

    # -- calculus and evaluation ------------------------------------------

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        x = coerce_scalar(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_shift(self, a) -> "Poly":
        """p(x + a) by Horner in the polynomial ring."""
        a = coerce_scalar(a)
        acc = Poly()
        xa = Poly([a, 1])
        for c in reversed(self.coeffs):
            acc = acc * xa + Poly([c])
        return acc

    # -- normal forms ------------------------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = _scalar_inv(self.leading())
        return Poly([c * inv for c in self.coeffs])

    def content_and_primitive(self) -> tuple[Fraction, "Poly"]:
        """Write self = content * primitive with integer coprime primitive.

        Only valid for rational coefficients.  The content's sign follows
        the leading coefficient, so the primitive part has positive lead.
        """
        if self.is_zero():
            return Fraction(0), self
        if not all(isinstance(c, Fraction) for c in self.coeffs):
            raise TypeError("content requires rational coefficients")
        den_lcm = 1
        for c in self.coeffs:
            den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
        nums = [int(c * den_lcm) for c in self.coeffs]
        g = 0
        for v in nums:
            g = _int_gcd(g, abs(v))
        if nums[-1] < 0:
            g = -g
        content = Fraction(g, den_lcm)
        prim = Poly([v // g for v in nums])
        return content, prim

    def primitive(self) -> "Poly":
        return self.content_and_primitive()[1]

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([x])


def _scalar_inv(c):
    if isinstance(c, Fraction):
        return Fraction(1) / c
    return c ** (-1)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (primitive with positive lead when rational)."""
    a, b = Poly(a.coeffs), Poly(b.coeffs)
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero() and b.is_rational():
            b = b.primitive()
    if a.is_zero():
        return a
    if a.is_rational():
        return a.primitive()
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    """p with repeated roots collapsed to simple ones."""
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive() if p.is_rational() else p.monic()
    q = p.exact_div(g)
    return q.primitive() if q.is_rational() else q.monic()
