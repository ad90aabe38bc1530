"""Readable text and JSON forms for series and their scalars.

Text form: ``1 - 3/2*n^-2 + 9/4*n^-3 + o(n^-4)`` with fractional powers
parenthesized (``n^(-3/2)``) and log-dependent coefficients written in
``log(n)``.  JSON forms round-trip exactly, including algebraic scalars
(carried as modulus plus isolating interval).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .algebra import AlgebraicReal, NumberField, Poly, RatFunc, scalar_sign
from .asymptotics import AsymSeries


def frac_str(q) -> str:
    return str(Fraction(q))


def _scalar_str(x) -> str:
    if isinstance(x, (int, Fraction)):
        return frac_str(x)
    q = x.to_fraction()
    if q is not None:
        return frac_str(q)
    lo, hi = x.approx_interval(Fraction(1, 10**12))
    return f"~{float((lo + hi) / 2):.10g}"


def poly_in_log_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if scalar_sign(c) == 0:
            continue
        cs = _scalar_str(c)
        if k == 0:
            parts.append(cs)
        else:
            var = "log(n)" if k == 1 else f"log(n)^{k}"
            parts.append(var if cs == "1" else f"-{var}" if cs == "-1" else f"{cs}*{var}")
    out = parts[0]
    for part in parts[1:]:
        out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return out


def coef_str(c: RatFunc) -> str:
    if c.is_constant():
        return _scalar_str(c.constant_value())
    num = poly_in_log_str(c.num)
    if c.den.degree <= 0 and c.den.constant() == 1:
        return f"({num})"
    return f"(({num})/({poly_in_log_str(c.den)}))"


def power_str(e: Fraction) -> str:
    """n^{-e} for a series exponent e."""
    neg = -e
    if neg.denominator == 1:
        return f"n^{neg}"
    return f"n^({neg})"


def term_str(e: Fraction, c: RatFunc) -> str:
    cs = coef_str(c)
    if e == 0:
        return cs
    ps = power_str(e)
    if cs == "1":
        return ps
    if cs == "-1":
        return f"-{ps}"
    return f"{cs}*{ps}"


def series_to_text(s: AsymSeries) -> str:
    parts = [term_str(e, c) for e, c in s.terms]
    if not parts:
        out = "0"
    else:
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    if s.error_order is not None:
        out += f" + o({power_str(s.error_order)})"
    return out


# -- JSON encoding -------------------------------------------------------------


def scalar_to_json(x):
    if isinstance(x, (int, Fraction)):
        return frac_str(x)
    root = x.field.root
    return {
        "coeffs": [frac_str(c) for c in x.coeffs],
        "modulus": [frac_str(c) for c in x.field.modulus.coeffs],
        "rootInterval": [frac_str(root.lo), frac_str(root.hi)],
    }


def scalar_from_json(obj, field_cache: Optional[dict] = None):
    if isinstance(obj, str):
        return Fraction(obj)
    key = (tuple(obj["modulus"]), tuple(obj["rootInterval"]))
    field = None if field_cache is None else field_cache.get(key)
    if field is None:
        poly = Poly([Fraction(c) for c in obj["modulus"]])
        lo, hi = (Fraction(v) for v in obj["rootInterval"])
        field = NumberField(AlgebraicReal(poly, lo, hi))
        if field_cache is not None:
            field_cache[key] = field
    return field.element([Fraction(c) for c in obj["coeffs"]])


def ratfunc_to_json(c: RatFunc) -> dict:
    return {
        "num": [scalar_to_json(x) for x in c.num.coeffs],
        "den": [scalar_to_json(x) for x in c.den.coeffs],
    }


def ratfunc_from_json(obj: dict, field_cache: Optional[dict] = None) -> RatFunc:
    num = Poly([scalar_from_json(x, field_cache) for x in obj["num"]])
    den = Poly([scalar_from_json(x, field_cache) for x in obj["den"]])
    return RatFunc(num, den)


def series_to_json(s: AsymSeries) -> dict:
    out: dict = {
        "terms": [
            {"exponent": frac_str(e), "coefficient": ratfunc_to_json(c)}
            for e, c in s.terms
        ]
    }
    out["errorOrder"] = None if s.error_order is None else frac_str(s.error_order)
    return out


def series_from_json(obj: dict) -> AsymSeries:
    cache: dict = {}
    terms = [
        (Fraction(t["exponent"]), ratfunc_from_json(t["coefficient"], cache))
        for t in obj["terms"]
    ]
    err = obj.get("errorOrder")
    return AsymSeries(terms, None if err is None else Fraction(err))
