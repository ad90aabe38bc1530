"""Rational functions num/den in one variable over an exact field.

Canonical form: num and den coprime; over the rationals both are scaled
to integer coefficients with jointly coprime contents and positive
leading denominator coefficient (so printed forms match hand-cleared
fractions exactly); over other fields the denominator is monic.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, poly_gcd, scalar_sign


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly([num]) if not isinstance(num, (list, tuple)) else Poly(num)
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly(den) if isinstance(den, (list, tuple)) else Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        if num.is_rational() and den.is_rational():
            cn, pn = num.content_and_primitive()
            cd, pd = den.content_and_primitive()
            # joint scale: keep integer pair with coprime contents
            c = cn / cd
            num = pn.scale(Fraction(c.numerator))
            den = pd.scale(Fraction(c.denominator))
        else:
            lead_inv = den.leading() ** (-1) if not isinstance(den.leading(), Fraction) else 1 / den.leading()
            num = num.scale(lead_inv)
            den = den.scale(lead_inv)
        self.num, self.den = num, den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(Poly([c]))

    @staticmethod
    def variable() -> "RatFunc":
        return RatFunc(Poly([0, 1]))

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(Poly())

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc(Poly([1]))

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        if self.num.is_zero():
            return Fraction(0)
        lead = self.den.constant()
        inv = 1 / lead if isinstance(lead, Fraction) else lead ** (-1)
        return self.num.constant() * inv

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num * other.den == other.num * self.den
        if isinstance(other, (int, Fraction)):
            return self == RatFunc.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({list(self.num.coeffs)!r}, {list(self.den.coeffs)!r})"

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other) -> "RatFunc":
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            if self.is_zero():
                raise ZeroDivisionError
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k)

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, x):
        d = self.den.eval(x)
        if isinstance(d, Fraction) and d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        n = self.num.eval(x)
        inv = 1 / d if isinstance(d, Fraction) else d ** (-1)
        return n * inv

    def defined_at(self, x) -> bool:
        d = self.den.eval(x)
        if isinstance(d, Fraction):
            return d != 0
        return bool(d)

    def shift(self, a) -> "RatFunc":
        """r(x + a)."""
        return RatFunc(self.num.compose_shift(a), self.den.compose_shift(a))


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x)
    return RatFunc.const(x)


def sign_at_infinity(r: RatFunc) -> int:
    """Eventual sign of r(x) as x -> +infinity (-1, 0, or 1)."""
    if r.is_zero():
        return 0
    return scalar_sign(r.num.leading()) * scalar_sign(r.den.leading())


def limit_at_infinity(r: RatFunc):
    """Limit of r(x) as x -> +infinity.

    Returns a scalar for finite limits, or the strings '+inf'/'-inf'.
    """
    dn, dd = r.num.degree, r.den.degree
    if r.is_zero() or dn < dd:
        return Fraction(0)
    if dn == dd:
        lead = r.den.leading()
        inv = 1 / lead if isinstance(lead, Fraction) else lead ** (-1)
        return r.num.leading() * inv
    return "+inf" if sign_at_infinity(r) > 0 else "-inf"
