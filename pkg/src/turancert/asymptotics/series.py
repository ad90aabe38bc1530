"""Truncated asymptotic series sum_i c_i(log n) / n^{e_i} + o(n^{-beta}).

Coefficients are rational functions of an abstract variable L standing for
log n; exponents are arbitrary rationals (negative allowed, so polynomial
prefactors embed).  errorOrder None means the remainder is identically
zero (finite closed form), not merely unknown.

Truncation is strict: a term is kept iff its exponent is strictly below
errorOrder; boundary terms are absorbed into the error.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional

from ..algebra import Poly, RatFunc

Exp = Fraction


def as_coef(x) -> RatFunc:
    """Coerce a scalar, polynomial in L, or rational function to RatFunc."""
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x)
    return RatFunc.const(x)


def log_var() -> RatFunc:
    """The coefficient variable L (stands for log n)."""
    return RatFunc.variable()


def gen_binomial(alpha, k: int):
    """Generalized binomial coefficient C(alpha, k) for rational alpha."""
    out = Fraction(1)
    a = Fraction(alpha)
    for i in range(k):
        out *= (a - i) / (k - i)
    return out


def _min_error(*errs) -> Optional[Fraction]:
    finite = [e for e in errs if e is not None]
    return min(finite) if finite else None


class AsymSeries:
    __slots__ = ("terms", "error_order")

    def __init__(self, terms: Iterable = (), error_order=None):
        merged: dict = {}
        for e, c in terms:
            e = Fraction(e)
            c = as_coef(c)
            if e in merged:
                merged[e] = merged[e] + c
            else:
                merged[e] = c
        err = Fraction(error_order) if error_order is not None else None
        kept = [
            (e, c)
            for e, c in merged.items()
            if c and (err is None or e < err)
        ]
        kept.sort(key=lambda t: t[0])
        self.terms = tuple(kept)
        self.error_order = err

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "AsymSeries":
        return AsymSeries()

    @staticmethod
    def one() -> "AsymSeries":
        return AsymSeries([(Fraction(0), 1)])

    @staticmethod
    def constant(c) -> "AsymSeries":
        return AsymSeries([(Fraction(0), c)])

    @staticmethod
    def from_term(exp, coef) -> "AsymSeries":
        return AsymSeries([(exp, coef)])

    @staticmethod
    def from_poly_in_n(p: Poly) -> "AsymSeries":
        """Polynomial in n as an exact series (negative exponents)."""
        return AsymSeries([(Fraction(-j), p[j]) for j in range(p.degree + 1)])

    @staticmethod
    def error_only(order) -> "AsymSeries":
        return AsymSeries([], error_order=order)

    # -- structure -------------------------------------------------------------

    def is_exact(self) -> bool:
        return self.error_order is None

    def is_zero(self) -> bool:
        return not self.terms and self.error_order is None

    def min_exp(self) -> Optional[Fraction]:
        return self.terms[0][0] if self.terms else None

    def max_exp(self) -> Optional[Fraction]:
        return self.terms[-1][0] if self.terms else None

    def leading(self):
        if not self.terms:
            raise ValueError("series has no terms")
        return self.terms[0]

    def coefficient(self, exp) -> RatFunc:
        exp = Fraction(exp)
        for e, c in self.terms:
            if e == exp:
                return c
        return RatFunc.zero()

    def __eq__(self, other):
        if isinstance(other, AsymSeries):
            return self.terms == other.terms and self.error_order == other.error_order
        return NotImplemented

    def __hash__(self):
        return hash((self.terms, self.error_order))

    def __repr__(self) -> str:
        parts = [f"({e}, {c!r})" for e, c in self.terms]
        return f"AsymSeries([{', '.join(parts)}], error_order={self.error_order})"

    # -- ring operations --------------------------------------------------------

    def __add__(self, other) -> "AsymSeries":
        if not isinstance(other, AsymSeries):
            other = AsymSeries.constant(other)
        return AsymSeries(
            list(self.terms) + list(other.terms),
            _min_error(self.error_order, other.error_order),
        )

    __radd__ = __add__

    def __neg__(self) -> "AsymSeries":
        return AsymSeries([(e, -c) for e, c in self.terms], self.error_order)

    def __sub__(self, other) -> "AsymSeries":
        if not isinstance(other, AsymSeries):
            other = AsymSeries.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "AsymSeries":
        return (-self) + other

    def scale(self, c) -> "AsymSeries":
        c = as_coef(c)
        return AsymSeries([(e, c * k) for e, k in self.terms], self.error_order)

    def __mul__(self, other) -> "AsymSeries":
        if not isinstance(other, AsymSeries):
            return self.scale(other)
        prods = [
            (ea + eb, ca * cb)
            for ea, ca in self.terms
            for eb, cb in other.terms
        ]
        errs = []
        if self.error_order is not None:
            if other.terms:
                errs.append(self.error_order + other.terms[0][0])
            if other.error_order is not None:
                errs.append(self.error_order + other.error_order)
            elif not other.terms:  # other is exactly zero
                return AsymSeries.zero() if not self.terms else AsymSeries(prods)
        if other.error_order is not None:
            if self.terms:
                errs.append(other.error_order + self.terms[0][0])
            elif self.error_order is None:  # self exactly zero
                return AsymSeries.zero()
        return AsymSeries(prods, _min_error(*errs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "AsymSeries":
        if k < 0:
            raise ValueError("negative powers go through series_inv")
        out = AsymSeries.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- reshaping ---------------------------------------------------------------

    def shift_exponents(self, delta) -> "AsymSeries":
        """Multiply by n^{-delta}: every exponent and the error move by delta."""
        delta = Fraction(delta)
        err = None if self.error_order is None else self.error_order + delta
        return AsymSeries([(e + delta, c) for e, c in self.terms], err)

    def truncate(self, order) -> "AsymSeries":
        order = Fraction(order)
        if self.error_order is not None and self.error_order <= order:
            return self
        return AsymSeries(self.terms, order)

    def eval_exact(self, n: int):
        """Value of the truncated sum at integer n >= 1, exactly.

        Needs log-free (constant) coefficients, and n must be a perfect
        q-th power for every exponent denominator q that appears.
        """
        total = Fraction(0)
        for e, c in self.terms:
            if not c.is_constant():
                raise ValueError("exact evaluation needs log-free coefficients")
            root = _integer_root(n, e.denominator)
            if root**e.denominator != n:
                raise ValueError(
                    f"{n} is not a perfect {e.denominator}th power; "
                    "pick evaluation points on the exponent grid"
                )
            total = total + c.constant_value() * Fraction(root) ** (-e.numerator)
        return total

    # -- numeric evaluation (diagnostics only; exact claims never rely on it) ----

    def eval_float(self, n) -> float:
        ln = math.log(n)
        total = 0.0
        for e, c in self.terms:
            total += _coef_float(c, ln) * float(n) ** (-float(e))
        return total


def _integer_root(n: int, q: int) -> int:
    r = int(round(n ** (1.0 / q)))
    while r > 0 and r**q > n:
        r -= 1
    while (r + 1) ** q <= n:
        r += 1
    return r


def _scalar_float(x) -> float:
    return float(x)


def _coef_float(c: RatFunc, lval: float) -> float:
    num = sum(_scalar_float(q) * lval**j for j, q in enumerate(c.num.coeffs))
    den = sum(_scalar_float(q) * lval**j for j, q in enumerate(c.den.coeffs))
    return num / den


# -- operation layer ------------------------------------------------------------


def _require_order(a: AsymSeries, order, what: str) -> Fraction:
    if order is not None:
        return Fraction(order)
    if a.error_order is not None:
        return a.error_order
    raise ValueError(f"{what} of an exact series needs an explicit order")


def series_mul(a: AsymSeries, b: AsymSeries) -> AsymSeries:
    return a * b


def _split_one(a: AsymSeries, what: str) -> AsymSeries:
    if not a.terms or a.terms[0][0] != 0 or a.terms[0][1] != RatFunc.one():
        raise ValueError(f"{what} needs leading term exactly 1")
    return AsymSeries(a.terms[1:], a.error_order)


def series_inv(a: AsymSeries, order=None) -> AsymSeries:
    """1/a for a = 1 + (positive-exponent terms)."""
    x = _split_one(a, "series_inv")
    if not x.terms and x.error_order is None:
        return AsymSeries.one()
    beta = _require_order(a, order, "series_inv")
    x = x.truncate(beta)
    if not x.terms:
        return AsymSeries.one().truncate(beta)
    delta = x.terms[0][0]
    out = AsymSeries.one().truncate(beta)
    power = AsymSeries.one()
    k_max = int(beta / delta) + 1
    for _ in range(1, k_max + 1):
        power = (power * (-x)).truncate(beta)
        if not power.terms:
            break
        out = out + power
    return out.truncate(beta)


def series_pow_binomial(a: AsymSeries, alpha, order=None) -> AsymSeries:
    """a^alpha for a = 1 + (positive-exponent terms), rational alpha."""
    alpha = Fraction(alpha)
    x = _split_one(a, "series_pow_binomial")
    if alpha.denominator == 1 and alpha >= 0 and x.is_exact():
        # plain integer power of a finite series stays exact
        return a ** int(alpha)
    beta = _require_order(a, order, "series_pow_binomial")
    x = x.truncate(beta)
    if not x.terms:
        return AsymSeries.one().truncate(beta)
    delta = x.terms[0][0]
    out = AsymSeries.one().truncate(beta)
    power = AsymSeries.one()
    k_max = int(beta / delta) + 1
    for k in range(1, k_max + 1):
        power = (power * x).truncate(beta)
        if not power.terms:
            break
        out = out + power.scale(gen_binomial(alpha, k))
    return out.truncate(beta)


def series_log(a: AsymSeries, order=None) -> AsymSeries:
    """log a for a = 1 + (positive-exponent terms)."""
    x = _split_one(a, "series_log")
    if not x.terms and x.error_order is None:
        return AsymSeries.zero()
    beta = _require_order(a, order, "series_log")
    x = x.truncate(beta)
    if not x.terms:
        return AsymSeries.error_only(beta)
    delta = x.terms[0][0]
    out = AsymSeries.error_only(beta)
    power = AsymSeries.one()
    k_max = int(beta / delta) + 1
    for k in range(1, k_max + 1):
        power = (power * x).truncate(beta)
        if not power.terms:
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def series_exp(a: AsymSeries, order=None) -> AsymSeries:
    """exp a for a with all exponents positive (a -> 0)."""
    if a.terms and a.terms[0][0] <= 0:
        raise ValueError("series_exp needs all exponents positive")
    if not a.terms and a.error_order is None:
        return AsymSeries.one()
    beta = _require_order(a, order, "series_exp")
    x = a.truncate(beta)
    out = AsymSeries.one().truncate(beta)
    if not x.terms:
        return out
    delta = x.terms[0][0]
    power = AsymSeries.one()
    fact = 1
    k_max = int(beta / delta) + 1
    for k in range(1, k_max + 1):
        power = (power * x).truncate(beta)
        fact *= k
        if not power.terms:
            break
        out = out + power.scale(Fraction(1, fact))
    return out


def binomial_power(c, alpha, order) -> AsymSeries:
    """(1 + c/n)^alpha as a series; exact when alpha is a nonnegative integer."""
    alpha = Fraction(alpha)
    c = Fraction(c)
    if c == 0:
        return AsymSeries.one()
    if alpha.denominator == 1 and alpha >= 0:
        return AsymSeries(
            [(Fraction(k), gen_binomial(alpha, k) * c**k) for k in range(int(alpha) + 1)]
        )
    order = Fraction(order)
    terms = []
    k = 0
    while Fraction(k) < order:
        terms.append((Fraction(k), gen_binomial(alpha, k) * c**k))
        k += 1
    return AsymSeries(terms, order)


def delta_series(direction: int, order) -> AsymSeries:
    """log(n + direction) - log n for direction +1 or -1."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    order = Fraction(order)
    terms = []
    k = 1
    while Fraction(k) < order:
        if direction == 1:
            terms.append((Fraction(k), Fraction((-1) ** (k - 1), k)))
        else:
            terms.append((Fraction(k), Fraction(-1, k)))
        k += 1
    return AsymSeries(terms, order)


def compose_coef_shift(r: RatFunc, direction: int, order) -> AsymSeries:
    """r(log(n + direction)) as a series with RatFunc-in-L coefficients.

    Taylor expansion of r at L along delta = log(n+dir) - log n; the j-th
    derivative term contributes at exponent >= j.
    """
    order = Fraction(order)
    if r.num.degree <= 0 and r.den.degree <= 0:
        # constant in L: shifting n does not touch it
        return AsymSeries.constant(r)
    d = delta_series(direction, order)
    out = AsymSeries.constant(r).truncate(order)
    power = AsymSeries.one()
    deriv = r
    fact = 1
    j = 1
    while Fraction(j) < order:
        power = (power * d).truncate(order)
        deriv = deriv.derivative()
        fact *= j
        if not power.terms or deriv.is_zero():
            break
        out = out + power.scale(deriv * Fraction(1, fact))
        j += 1
    return out


def shift_expand(r: RatFunc, direction: int, K: int) -> list[RatFunc]:
    """Coefficients r_1..r_K with r(log(n+dir)) - r(log n) = sum r_i(log n)/n^i + o(n^-K)."""
    if K < 1:
        raise ValueError("K must be >= 1")
    s = compose_coef_shift(r, direction, Fraction(K + 1))
    return [s.coefficient(Fraction(i)) for i in range(1, K + 1)]


def shift_series(a: AsymSeries, direction: int, order=None) -> AsymSeries:
    """Re-expand a(n + direction) around n.

    Each term c(L)/n^e becomes c(log(n+dir)) * n^{-e} (1 + dir/n)^{-e};
    exponents move by nonnegative integers only.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    beta = _require_order(a, order, "shift_series")
    out = AsymSeries.error_only(beta)
    for e, c in a.terms:
        if e >= beta:
            continue
        rel = beta - e
        factor = compose_coef_shift(c, direction, rel) * binomial_power(
            direction, -e, rel
        )
        out = out + factor.shift_exponents(e)
    return out.truncate(beta)
