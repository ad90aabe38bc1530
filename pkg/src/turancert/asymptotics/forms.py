"""Closed-form u-series for model sequences n^alpha log^p n.

These feed the same asymptotic criteria as recurrence-driven expansions,
so borderline regimes can be probed directly against sequences whose
u_n = a_{n-1}a_{n+1}/a_n^2 is known in closed form.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra import RatFunc
from .series import AsymSeries, delta_series, series_pow_binomial


def u_power(alpha, order) -> AsymSeries:
    """u-series of a_n = n^alpha: (1 - 1/n^2)^alpha.

    Exact (finite) for nonnegative integer alpha, truncated otherwise.
    """
    base = AsymSeries([(Fraction(0), 1), (Fraction(2), -1)])
    return series_pow_binomial(base, alpha, order)


def u_power_log(alpha, p, order) -> AsymSeries:
    """u-series of a_n = n^alpha log^p n.

    The log factor contributes (1 + dlog+/L)(1 + dlog-/L) per power,
    where dlog+- = log(n+-1) - log(n) and L stands for log n.
    """
    order = Fraction(order)
    out = u_power(alpha, order)
    inv_l = RatFunc.variable() ** (-1)
    for direction in (1, -1):
        factor = AsymSeries.one() + delta_series(direction, order).scale(inv_l)
        out = out * series_pow_binomial(factor, p, order)
    return out.truncate(order)
