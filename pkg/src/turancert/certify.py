"""Finite certificates for the cubic Turan inequality.

The pipeline turns an asymptotic ratio expansion into unconditional,
finitely checkable claims:

1. Two-sided rational bounds s_l(n) <= a(n)/a(n-1) <= s_u(n), proved by a
   window induction on the recurrence with an exactly checked base segment.
2. A u-window g(n) <= u_n <= f(n) discharged symbolically from the ratio
   bounds (u_n is a quotient of consecutive ratios).
3. Four corner polynomials: values of the two-variable form
   t(x, y) = 4(1-x)(1-y) - (1-xy)^2 at the corners of the rectangle
   [g(n), f(n)] x [g(n+1), f(n+1)].  t is concave in each variable, so its
   minimum over the rectangle sits at a corner; positive corners beyond
   explicit thresholds prove the inequality for all larger n.
4. An exactly evaluated initial segment covering every index below the
   thresholds, with violations listed rather than hidden.

Everything is exact rational arithmetic; no step trusts the asymptotic
expansion beyond the inductively proved windows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .algebra import (
    Poly,
    RatFunc,
    eventual_positivity_threshold,
    rationalize,
    sign_at_infinity,
)
from .asymptotics import (
    RatioExpansion,
    binomial_power,
    ratio_expansion,
    shift_series,
    u_expansion,
)
from .render import frac_str
from .sequences import Recurrence, TermTable, phi_values, turan3_sign, u_value

BASE_SCAN_BUDGET = 10000


class CertifyError(RuntimeError):
    """Raised when a certificate cannot be established at the given order."""


def _monomial(e: int) -> RatFunc:
    if e >= 0:
        return RatFunc(Poly([0] * e + [1]))
    return RatFunc(Poly([1]), Poly([0] * (-e) + [1]))


def _ept(r: RatFunc) -> int:
    """Eventual positivity threshold, mapped onto CertifyError."""
    if sign_at_infinity(r) <= 0:
        raise CertifyError("required inequality is not eventually positive")
    return eventual_positivity_threshold(r)


def turan_form(x, y):
    """t(x, y) = 4(1-x)(1-y) - (1-xy)^2 on exact scalars or RatFuncs."""
    return 4 * (1 - x) * (1 - y) - (1 - x * y) ** 2


# -- ratio bounds ---------------------------------------------------------------


@dataclass
class RatioBounds:
    """Certified window s_l(n) <= a(n)/a(n-1) <= s_u(n) for all n > valid_from."""

    lam: Fraction
    mu: int
    lower: RatFunc
    upper: RatFunc
    valid_from: int
    order: int

    def contains(self, n: int, ratio: Fraction) -> bool:
        return self.lower.eval(n) <= ratio <= self.upper.eval(n)


def _ratio_window_functions(rx: RatioExpansion, order: int):
    """Truncated series of a(n)/a(n-1) = lam (n-1)^mu v(n-1) plus unit slack."""
    if rx.rho != 1:
        raise CertifyError(
            "certification needs an expansion on the integer exponent grid"
        )
    if not isinstance(rx.lam, Fraction):
        raise CertifyError("certification needs a rational growth constant")
    mu = rx.mu
    if mu.denominator != 1:
        raise CertifyError("certification needs an integer power correction")
    mu = int(mu)

    beta = Fraction(order + 1)
    w = binomial_power(-1, Fraction(mu), beta) * shift_series(rx.v, -1, beta)
    top = order - 1  # keep inverse powers n^0 .. n^-(order-1)
    num = Poly()
    for e, c in w.truncate(Fraction(order)).terms:
        if not c.is_constant():
            raise CertifyError("ratio series has non-constant coefficients")
        k = int(e)
        num = num + Poly([0] * (top - k) + [rx.lam * c.constant_value()])
    mid = RatFunc(num, Poly([0] * top + [1])) * _monomial(mu)
    slack = _monomial(mu - order + 1)
    return mid - slack, mid + slack, mu


def certify_ratio_bounds(
    rec: Recurrence,
    order: int = 4,
    table: Optional[TermTable] = None,
    rx: Optional[RatioExpansion] = None,
) -> RatioBounds:
    """Prove two-sided bounds on consecutive-term ratios by window induction.

    The recurrence is rewritten as r(n+d) = q_1(n) + sum_k q_k(n) / prod of
    the d-1 previous ratios.  Once every q_k has settled sign and the bound
    functions discharge the induction step symbolically, a scan finds d-1
    consecutive exactly in-window ratios to start the induction.
    """
    if table is None:
        table = TermTable(rec)
    if rx is None:
        rx = ratio_expansion(rec, order, table=table)
    s_l, s_u, mu = _ratio_window_functions(rx, order)

    d = rec.order
    p0 = RatFunc(rec.coeffs[0])
    q = [RatFunc(rec.coeffs[k]) / p0 for k in range(1, d + 1)]

    thresholds = [_ept(s_l)]
    sigma = []
    for k in range(2, d + 1):
        qk = q[k - 1]
        sk = sign_at_infinity(qk)
        sigma.append(sk)
        if sk > 0:
            thresholds.append(eventual_positivity_threshold(qk))
        elif sk < 0:
            thresholds.append(eventual_positivity_threshold(-qk))

    upper_step = q[0]
    lower_step = q[0]
    for k in range(2, d + 1):
        sk = sigma[k - 2]
        if sk == 0:
            continue
        prod_small = RatFunc(Poly([1]))
        prod_large = RatFunc(Poly([1]))
        for j in range(1, k):
            prod_small = prod_small * s_l.shift(d - j)
            prod_large = prod_large * s_u.shift(d - j)
        if sk > 0:
            upper_step = upper_step + q[k - 1] / prod_small
            lower_step = lower_step + q[k - 1] / prod_large
        else:
            upper_step = upper_step + q[k - 1] / prod_large
            lower_step = lower_step + q[k - 1] / prod_small

    thresholds.append(_ept(s_u.shift(d) - upper_step))
    thresholds.append(_ept(lower_step - s_l.shift(d)))
    n1 = max(thresholds)

    if d == 1:
        # r(n+1) = q_1(n) exactly; the discharge already covers every index
        # n+1 with n > n1.
        return RatioBounds(rx.lam, mu, s_l, s_u, n1 + 1, order)

    start = n1 + 2
    for m in range(start, start + BASE_SCAN_BUDGET):
        ok = True
        for j in range(m, m + d - 1):
            prev, cur = table.values(j - 1, j)
            if prev == 0 or not s_l.defined_at(j):
                ok = False
                break
            ratio = cur / prev
            if not (s_l.eval(j) <= ratio <= s_u.eval(j)):
                ok = False
                break
        if ok:
            return RatioBounds(rx.lam, mu, s_l, s_u, m - 1, order)
    raise CertifyError(
        f"no base window of {d - 1} in-window ratios within "
        f"{BASE_SCAN_BUDGET} indices past {start}; retry with a larger order"
    )


# -- u window -------------------------------------------------------------------


@dataclass
class UBounds:
    """Certified window g(n) <= u_n <= f(n) for all n > valid_from."""

    lower: RatFunc
    upper: RatFunc
    valid_from: int
    slack_exponent: Fraction
    kept: dict

    def contains(self, n: int, u: Fraction) -> bool:
        return self.lower.eval(n) <= u <= self.upper.eval(n)


def u_bound_functions(u_series, order: int):
    """Window functions from a u-expansion: kept terms, rounded outward.

    Keeps correction terms with exponent strictly below order-1, rounds
    their coefficients outward to denominators at most 10^6, and adds a
    unit slack at the last kept exponent (or at order-1 if none is kept).
    """
    cut = Fraction(order - 1)
    kept_lo: list = []
    kept_hi: list = []
    last_exp = None
    for e, c in u_series.terms:
        if e == 0 or e >= cut:
            continue
        if not c.is_constant():
            raise CertifyError("u-series has non-constant coefficients")
        val = c.constant_value()
        kept_lo.append((e, rationalize(val, "down")))
        kept_hi.append((e, rationalize(val, "up")))
        last_exp = e
    slack_exp = last_exp if last_exp is not None else cut
    if slack_exp.denominator != 1:
        raise CertifyError("u-window needs integer exponents")

    def build(parts, slack_sign):
        out = RatFunc(Poly([1]))
        for e, dcoef in parts:
            out = out + dcoef * _monomial(-int(e))
        return out + slack_sign * _monomial(-int(slack_exp))

    g = build(kept_lo, -1)
    f = build(kept_hi, +1)
    kept = {e: (lo, hi) for (e, lo), (_, hi) in zip(kept_lo, kept_hi)}
    return g, f, Fraction(slack_exp), kept


def certify_u_bounds(
    rec: Recurrence,
    order: int = 4,
    table: Optional[TermTable] = None,
) -> tuple:
    """Certified two-sided u_n window, discharged from the ratio window.

    u_n = r(n+1)/r(n) with r(n) = a(n)/a(n-1), so with positive ratio
    bounds s_l <= r <= s_u the quotient is sandwiched by
    s_l(n+1)/s_u(n) and s_u(n+1)/s_l(n).
    """
    if table is None:
        table = TermTable(rec)
    rx = ratio_expansion(rec, order, table=table)
    rb = certify_ratio_bounds(rec, order, table=table, rx=rx)
    u_series = u_expansion(rx, scaling="none")
    g, f, slack_exp, kept = u_bound_functions(u_series, order)

    hi = f - rb.upper.shift(1) / rb.lower
    lo = rb.lower.shift(1) / rb.upper - g
    n2 = max(_ept(hi), _ept(lo), rb.valid_from)
    return rb, UBounds(g, f, n2, slack_exp, kept)


# -- corner polynomials and the certificate ------------------------------------


def corner_polynomial(g: RatFunc, f: RatFunc, corner: int) -> RatFunc:
    """t at corner `corner` of [g(n), f(n)] x [g(n+1), f(n+1)].

    Corners are numbered 0..3 as (g,g), (g,f), (f,g), (f,f), the second
    coordinate shifted to n+1.
    """
    if corner not in (0, 1, 2, 3):
        raise ValueError("corner must be in 0..3")
    x = g if corner < 2 else f
    y = (g if corner % 2 == 0 else f).shift(1)
    return turan_form(x, y)


def corner_suite(g: RatFunc, f: RatFunc) -> list:
    """All four corner polynomials with eventual positivity thresholds."""
    out = []
    for corner in range(4):
        poly = corner_polynomial(g, f, corner)
        if sign_at_infinity(poly) <= 0:
            raise CertifyError(
                f"corner {corner} of the u-window is not eventually positive; "
                "either the window is too wide or the form is negative on it"
            )
        out.append({"value": poly, "threshold": eventual_positivity_threshold(poly)})
    return out


_SCALE_FACTOR = RatFunc(Poly([0, 1]), Poly([1, 1]))  # n/(n+1)


@dataclass
class TuranCertificate:
    """Finite certificate that the cubic Turan inequality holds from an index.

    All claims are exact: the u-window holds for n > bounds.valid_from by the
    ratio induction, the four corner values are positive for n > N, and every
    index in the initial segment was evaluated in exact arithmetic.
    """

    rec: Recurrence
    scaling: str
    order: int
    ratio: RatioBounds
    bounds: UBounds
    corners: list
    N: int
    segment_from: int
    segment_to: int
    violations: list
    holds_from: int

    def to_json(self) -> dict:
        def rf(r: RatFunc) -> dict:
            return {
                "num": [frac_str(c) for c in r.num.coeffs],
                "den": [frac_str(c) for c in r.den.coeffs],
            }

        return {
            "toolVersion": __version__,
            "kind": "turan3",
            "sequence": {
                "name": self.rec.name,
                "coeffs": [[frac_str(c) for c in p.coeffs] for p in self.rec.coeffs],
                "initials": [frac_str(v) for v in self.rec.initials],
                "scaling": self.scaling,
            },
            "order": self.order,
            "ratioBounds": {
                "lambda": frac_str(self.ratio.lam),
                "mu": self.ratio.mu,
                "lower": rf(self.ratio.lower),
                "upper": rf(self.ratio.upper),
                "validFrom": self.ratio.valid_from,
            },
            "bounds": {
                "g": rf(self.bounds.lower),
                "f": rf(self.bounds.upper),
                "validFrom": self.bounds.valid_from,
                "slackExponent": frac_str(self.bounds.slack_exponent),
            },
            "corners": [
                {
                    "num": [frac_str(c) for c in corner["value"].num.coeffs],
                    "den": [frac_str(c) for c in corner["value"].den.coeffs],
                    "threshold": corner["threshold"],
                }
                for corner in self.corners
            ],
            "N": self.N,
            "initialSegment": {
                "from": self.segment_from,
                "to": self.segment_to,
                "violations": list(self.violations),
            },
            "holdsFrom": self.holds_from,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def certify_turan3(
    rec: Recurrence,
    order: int = 4,
    scaling: str = "none",
    table: Optional[TermTable] = None,
) -> TuranCertificate:
    """End-to-end certificate for 4 b_n b_{n+1} > (a_n a_{n+1} - a_{n-1} a_{n+2})^2.

    With factorial scaling the window functions pick up the exact factor
    n/(n+1), since u_n of {a_n/n!} equals u_n of {a_n} times n/(n+1).
    """
    if table is None:
        table = TermTable(rec)
    rb, ub = certify_u_bounds(rec, order, table=table)
    g, f = ub.lower, ub.upper
    if scaling == "factorial":
        g = g * _SCALE_FACTOR
        f = f * _SCALE_FACTOR
    elif scaling != "none":
        raise ValueError(f"unknown scaling {scaling!r}")
    scaled_bounds = UBounds(g, f, ub.valid_from, ub.slack_exponent, ub.kept)

    corners = corner_suite(g, f)
    n_cert = max([ub.valid_from] + [c["threshold"] for c in corners])

    violations = []
    for n in range(1, n_cert + 1):
        if turan3_sign(table, n, scaling) <= 0:
            violations.append(n)
    holds_from = (violations[-1] + 1) if violations else 1

    return TuranCertificate(
        rec=rec,
        scaling=scaling,
        order=order,
        ratio=rb,
        bounds=scaled_bounds,
        corners=corners,
        N=n_cert,
        segment_from=1,
        segment_to=n_cert,
        violations=violations,
        holds_from=holds_from,
    )


@dataclass
class UWindowCertificate:
    """Certified window g(n) <= u_n <= f(n) without a sign conclusion.

    Emitted when the window itself is sound but its corners do not settle
    the cubic inequality, for instance when the window sits above 1.  The
    checked segment records an exact recheck of the containment.
    """

    rec: Recurrence
    scaling: str
    order: int
    ratio: RatioBounds
    bounds: UBounds
    checked_from: int
    checked_to: int

    def to_json(self) -> dict:
        def rf(r: RatFunc) -> dict:
            return {
                "num": [frac_str(c) for c in r.num.coeffs],
                "den": [frac_str(c) for c in r.den.coeffs],
            }

        return {
            "toolVersion": __version__,
            "kind": "u-window",
            "sequence": {
                "name": self.rec.name,
                "coeffs": [[frac_str(c) for c in p.coeffs] for p in self.rec.coeffs],
                "initials": [frac_str(v) for v in self.rec.initials],
                "scaling": self.scaling,
            },
            "order": self.order,
            "ratioBounds": {
                "lambda": frac_str(self.ratio.lam),
                "mu": self.ratio.mu,
                "lower": rf(self.ratio.lower),
                "upper": rf(self.ratio.upper),
                "validFrom": self.ratio.valid_from,
            },
            "bounds": {
                "g": rf(self.bounds.lower),
                "f": rf(self.bounds.upper),
                "validFrom": self.bounds.valid_from,
                "slackExponent": frac_str(self.bounds.slack_exponent),
            },
            "checkedSegment": {
                "from": self.checked_from,
                "to": self.checked_to,
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def certify_u_window(
    rec: Recurrence,
    order: int = 4,
    scaling: str = "none",
    table: Optional[TermTable] = None,
    span: int = 2000,
) -> UWindowCertificate:
    """Certified u-window alone, rechecked exactly over a finite segment.

    The containment already holds for all n > validFrom by the ratio
    induction; the segment recheck over (validFrom, validFrom + span] is a
    redundant exact confirmation stored with the artifact.
    """
    if table is None:
        table = TermTable(rec)
    rb, ub = certify_u_bounds(rec, order, table=table)
    g, f = ub.lower, ub.upper
    if scaling == "factorial":
        g = g * _SCALE_FACTOR
        f = f * _SCALE_FACTOR
    elif scaling != "none":
        raise ValueError(f"unknown scaling {scaling!r}")
    scaled_bounds = UBounds(g, f, ub.valid_from, ub.slack_exponent, ub.kept)

    lo, hi = ub.valid_from + 1, ub.valid_from + span
    for n in range(lo, hi + 1):
        if not scaled_bounds.contains(n, u_value(table, n, scaling)):
            raise CertifyError(f"u at n = {n} escapes the certified window")

    return UWindowCertificate(
        rec=rec,
        scaling=scaling,
        order=order,
        ratio=rb,
        bounds=scaled_bounds,
        checked_from=lo,
        checked_to=hi,
    )


# -- independent re-check -------------------------------------------------------


def _rf_from_json(obj: dict) -> RatFunc:
    return RatFunc(
        Poly([Fraction(c) for c in obj["num"]]),
        Poly([Fraction(c) for c in obj["den"]]),
    )


def _sequence_identity(cert: dict, rec: Recurrence, bad: list) -> str:
    seq = cert.get("sequence", {})
    coeffs = [[frac_str(c) for c in p.coeffs] for p in rec.coeffs]
    initials = [frac_str(v) for v in rec.initials]
    if seq.get("coeffs") != coeffs or seq.get("initials") != initials:
        bad.append("certificate does not describe this recurrence")
    return seq.get("scaling", "none")


def verify_certificate(cert: dict, rec: Recurrence, table: Optional[TermTable] = None):
    """Replay a certificate against the sequence itself.

    For the full kind ("turan3") this checks, in exact arithmetic: the
    certificate names this recurrence; the corner polynomials follow from the
    stored window functions; every stored threshold is valid; N covers
    thresholds and window validity; u_n sits in the stored window on a hundred
    sampled indices; and the initial-segment violation list is reproduced.
    For the window-only kind ("u-window") it recomputes the window functions
    and rechecks the stored segment exactly.  Returns (ok, diagnosis list).
    """
    if table is None:
        table = TermTable(rec)
    kind = cert.get("kind", "turan3")
    if kind == "u-window":
        return _verify_u_window(cert, rec, table)
    if kind != "turan3":
        return False, [f"unknown certificate kind {kind!r}"]

    bad: list = []
    scaling = _sequence_identity(cert, rec, bad)

    try:
        g = _rf_from_json(cert["bounds"]["g"])
        f = _rf_from_json(cert["bounds"]["f"])
        valid_from = int(cert["bounds"]["validFrom"])
        n_cert = int(cert["N"])
        stored_corners = cert["corners"]
        seg = cert["initialSegment"]
    except (KeyError, TypeError, ValueError) as exc:
        return False, [f"malformed certificate: {exc}"]

    if len(stored_corners) != 4:
        bad.append("expected exactly four corner polynomials")
    else:
        for i, stored in enumerate(stored_corners):
            expect = corner_polynomial(g, f, i)
            got = _rf_from_json(stored)
            if got != expect:
                bad.append(f"corner {i} does not match the stored window functions")
                continue
            thr = int(stored["threshold"])
            if sign_at_infinity(expect) <= 0:
                bad.append(f"corner {i} is not eventually positive")
            elif eventual_positivity_threshold(expect) > thr:
                bad.append(f"corner {i} threshold {thr} is not valid")
            if thr > n_cert:
                bad.append(f"N = {n_cert} does not cover corner {i} threshold {thr}")

    if valid_from > n_cert:
        bad.append("N does not cover the window validity threshold")

    for i in range(1, 101):
        n = valid_from + i
        u = u_value(table, n, scaling)
        if not (g.eval(n) <= u <= f.eval(n)):
            bad.append(f"u at n = {n} escapes the stored window")
            break

    lo, hi = int(seg["from"]), int(seg["to"])
    if lo != 1 or hi != n_cert:
        bad.append("initial segment does not cover [1, N]")
    else:
        viol = [n for n in range(lo, hi + 1) if turan3_sign(table, n, scaling) <= 0]
        if viol != [int(v) for v in seg["violations"]]:
            bad.append("initial-segment violations do not match")
        holds_from = (viol[-1] + 1) if viol else 1
        if int(cert.get("holdsFrom", -1)) != holds_from:
            bad.append("holdsFrom is inconsistent with the violations")

    return len(bad) == 0, bad


def _verify_u_window(cert: dict, rec: Recurrence, table: TermTable):
    bad: list = []
    scaling = _sequence_identity(cert, rec, bad)

    try:
        g = _rf_from_json(cert["bounds"]["g"])
        f = _rf_from_json(cert["bounds"]["f"])
        valid_from = int(cert["bounds"]["validFrom"])
        order = int(cert["order"])
        seg = cert["checkedSegment"]
        lo, hi = int(seg["from"]), int(seg["to"])
    except (KeyError, TypeError, ValueError) as exc:
        return False, [f"malformed certificate: {exc}"]

    _, ub = certify_u_bounds(rec, order, table=table)
    eg, ef = ub.lower, ub.upper
    if scaling == "factorial":
        eg = eg * _SCALE_FACTOR
        ef = ef * _SCALE_FACTOR
    elif scaling != "none":
        bad.append(f"unknown scaling {scaling!r}")
        return False, bad
    if g != eg or f != ef:
        bad.append("window functions do not match a recomputation")
    if valid_from < ub.valid_from:
        bad.append(
            f"validFrom {valid_from} is below the certified threshold {ub.valid_from}"
        )

    if lo != valid_from + 1:
        bad.append("checked segment does not start right after validFrom")
    for n in range(lo, hi + 1):
        if not (g.eval(n) <= u_value(table, n, scaling) <= f.eval(n)):
            bad.append(f"u at n = {n} escapes the stored window")
            break

    return len(bad) == 0, bad


# -- second-level window (iterated form) ----------------------------------------


@dataclass
class Llc2Certificate:
    """Certified eventual 2-fold log-concavity via an interval-lifted window.

    With b_n = a_n^2 - a_{n-1} a_{n+1} and u_n in [g, f] with f < 1, the
    quotient b_{n-1} b_{n+1} / b_n^2 = u_n^2 (1-u_{n-1})(1-u_{n+1})/(1-u_n)^2
    is sandwiched by endpoint products; its upper bound staying below 1
    forces phi(phi(a)) > 0.
    """

    rec: Recurrence
    scaling: str
    order: int
    lower: RatFunc
    upper: RatFunc
    N: int
    violations: list
    holds_from: int


def certify_llc2(
    rec: Recurrence,
    order: int = 4,
    scaling: str = "none",
    table: Optional[TermTable] = None,
) -> Llc2Certificate:
    """Certificate that phi{a} is eventually positive and log-concave."""
    if table is None:
        table = TermTable(rec)
    _, ub = certify_u_bounds(rec, order, table=table)
    g, f = ub.lower, ub.upper
    if scaling == "factorial":
        g = g * _SCALE_FACTOR
        f = f * _SCALE_FACTOR
    elif scaling != "none":
        raise ValueError(f"unknown scaling {scaling!r}")

    # b_n > 0 and the interval endpoints positive: g > 0 and f < 1.
    t_pos = max(_ept(g), _ept(1 - f))
    g2 = g * g * (1 - f.shift(-1)) * (1 - f.shift(1)) / ((1 - g) * (1 - g))
    f2 = f * f * (1 - g.shift(-1)) * (1 - g.shift(1)) / ((1 - f) * (1 - f))
    # 2-fold log-concavity needs the lifted upper bound to stay below 1.
    n_cert = max(ub.valid_from + 1, t_pos + 1, _ept(1 - f2))

    violations = []
    base = phi_values(table, 1, 0, n_cert + 2, scaling)
    for n in range(1, n_cert + 1):
        b0, b1, b2 = base[n - 1], base[n], base[n + 1]
        if b1 <= 0 or b1 * b1 - b0 * b2 <= 0:
            violations.append(n)
    holds_from = (violations[-1] + 1) if violations else 1
    return Llc2Certificate(
        rec=rec,
        scaling=scaling,
        order=order,
        lower=g2,
        upper=f2,
        N=n_cert,
        violations=violations,
        holds_from=holds_from,
    )
