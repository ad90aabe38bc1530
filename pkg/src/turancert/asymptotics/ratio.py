"""Consecutive-ratio expansions a(n+1)/a(n) ~ lam * n^mu * v(n) for
P-recursive sequences, and the induced expansions of u_n and of the
u-ratio of the centered second difference.

The growth branch comes from the Newton polygon of the recurrence: the
rightmost upper-hull edge fixes mu, the edge polynomial fixes the
admissible lam values.  Correction coefficients of v are solved stage by
stage from the recurrence residual; every candidate branch must pass an
empirical ratio check on exact terms before it is accepted (wrong
branches miss by orders of magnitude, so loose float thresholds are
safe; no exactness claim rests on the check).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..algebra import (
    NumberField,
    Poly,
    RatFunc,
    isolate_real_roots,
)
from ..sequences import Recurrence, TermTable
from .series import (
    AsymSeries,
    binomial_power,
    compose_coef_shift,
    series_inv,
    shift_series,
)


class ExpansionError(RuntimeError):
    """No admissible growth branch fits the recurrence."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.details = details or {}


class _Resonance(Exception):
    def __init__(self, stage: int):
        self.stage = stage


@dataclass
class RatioExpansion:
    """a(n+1)/a(n) = lam * n^mu * v(n) with v = 1 + sum c_i n^{-i/rho} + o(...)."""

    lam: object
    lam_poly: Optional[Poly]
    mu: Fraction
    rho: int
    v: AsymSeries
    coeffs: list
    diagnostics: dict = field(default_factory=dict)

    def growth_record(self) -> dict:
        rec: dict = {
            "lambdaApprox": float(self.lam),
            "mu": str(self.mu),
            "rho": self.rho,
        }
        if self.lam_poly is None:
            rec["lambda"] = str(Fraction(self.lam))
        else:
            rec["lambdaMinimalPolynomial"] = [
                str(Fraction(c)) for c in self.lam_poly.coeffs
            ]
        if self.rho == 2 and self.coeffs and self.coeffs[0]:
            # v = 1 + c1/sqrt(n) + ... lifts to a stretched-exponential
            # factor exp(2*c1*sqrt(n)) in a(n) itself
            rec["stretchedExponential"] = {
                "form": "exp(c*sqrt(n))",
                "c": _scalar_str(2 * self.coeffs[0]),
            }
        return rec


def _scalar_str(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    q = x.to_fraction()
    if q is not None:
        return str(q)
    return repr(float(x))


# -- Newton polygon ---------------------------------------------------------


def newton_points(rec: Recurrence) -> list:
    """(shift count, coefficient degree) per nonzero recurrence coefficient."""
    d = rec.order
    return [(d - k, p.degree) for k, p in enumerate(rec.coeffs) if not p.is_zero()]


def _upper_hull(points: list) -> list:
    pts = sorted(points)
    hull: list = []
    for p in pts:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def dominant_edge(rec: Recurrence) -> tuple:
    """(mu, E0, on-edge term indices) for the fastest-growing branch."""
    pts = newton_points(rec)
    if len(pts) < 2:
        raise ExpansionError(
            "recurrence has a single nonzero coefficient; no ratio branch exists"
        )
    hull = _upper_hull(pts)
    if len(hull) == 1:
        raise ExpansionError("degenerate Newton polygon")
    (x1, m1), (x2, m2) = hull[-2], hull[-1]
    mu = -Fraction(m2 - m1, x2 - x1)
    e0 = Fraction(m2) + mu * x2
    d = rec.order
    on_edge = [
        k
        for k, p in enumerate(rec.coeffs)
        if not p.is_zero() and Fraction(p.degree) + mu * (d - k) == e0
    ]
    return mu, e0, on_edge


def edge_polynomial(rec: Recurrence, mu: Fraction, on_edge: list) -> Poly:
    """Leading-balance polynomial in lam; its positive roots are the
    admissible growth constants for the chosen edge."""
    d = rec.order
    x_min = min(d - k for k in on_edge)
    coeffs = [Fraction(0)] * (d - x_min + 1)
    for k in on_edge:
        sign = 1 if k == 0 else -1
        coeffs[(d - k) - x_min] += sign * rec.coeffs[k].leading()
    return Poly(coeffs)


# -- stage solver -------------------------------------------------------------


def _v_shifted(cs: list, rho: int, j: int, rel_order: Fraction) -> AsymSeries:
    """v(n+j) re-expanded at n, for v = 1 + sum cs[i-1] n^{-i/rho}."""
    out = AsymSeries.one().truncate(rel_order)
    for i, c in enumerate(cs, start=1):
        e = Fraction(i, rho)
        if e >= rel_order:
            break
        if not c:
            continue
        if j == 0:
            out = out + AsymSeries.from_term(e, c)
        else:
            out = out + binomial_power(j, -e, rel_order - e).shift_exponents(e).scale(c)
    return out


def _residual(rec: Recurrence, lam, mu: Fraction, rho: int, cs: list, rel_order: Fraction) -> AsymSeries:
    """p0(n) prod_{j<d} r(n+j) - sum_k pk(n) prod_{j<d-k} r(n+j), with
    r(n) = lam n^mu v(n); absolute exponents (n^s appears as exponent -s)."""
    d = rec.order
    total = AsymSeries.zero()
    for k, p in enumerate(rec.coeffs):
        if p.is_zero():
            continue
        x = d - k
        factor = AsymSeries.one().truncate(rel_order) if x else AsymSeries.one()
        for j in range(x):
            vj = _v_shifted(cs, rho, j, rel_order)
            if j > 0:
                vj = vj * binomial_power(j, mu, rel_order)
            factor = (factor * vj).truncate(rel_order)
        term = AsymSeries.from_poly_in_n(p) * factor
        term = term.scale(lam**x).shift_exponents(-mu * x)
        total = total + term if k == 0 else total - term
    return total


def _slot_value(f: AsymSeries, exp: Fraction):
    c = f.coefficient(exp)
    if not c.is_constant():
        raise ExpansionError("log-dependent residual slot in a ratio expansion")
    return c.constant_value()


def _solve_stages(rec: Recurrence, lam, mu: Fraction, e0: Fraction, rho: int, T: int) -> list:
    cs: list = []
    for i in range(1, T + 1):
        rel = Fraction(i + 1, rho)
        slot = -e0 + Fraction(i, rho)
        b = _slot_value(_residual(rec, lam, mu, rho, cs + [Fraction(0)], rel), slot)
        a1 = _slot_value(_residual(rec, lam, mu, rho, cs + [Fraction(1)], rel), slot)
        a = a1 - b
        if not a:
            if not b:
                cs.append(Fraction(0))
                continue
            raise _Resonance(i)
        cs.append(-(b / a))
    # every slot up to T must now cancel identically
    rel = Fraction(T + 1, rho)
    f = _residual(rec, lam, mu, rho, cs, rel)
    for i in range(T + 1):
        c = f.coefficient(-e0 + Fraction(i, rho))
        if not c.is_zero():
            raise ExpansionError(
                f"internal: residual slot {i} does not vanish after stage solve"
            )
    return cs


# -- branch acceptance ---------------------------------------------------------


def _ratio_checkpoint(table: TermTable, n: int) -> Optional[tuple]:
    limit = n + 50
    while table.value(n) == 0 or table.value(n + 1) == 0:
        n += 1
        if n > limit:
            return None
    return n, table.value(n + 1) / table.value(n)


def _empirical_residuals(table: TermTable, lam, mu: Fraction, v: AsymSeries) -> list:
    lamf = float(lam)
    muf = float(mu)
    out = []
    for n0 in (40, 80):
        point = _ratio_checkpoint(table, n0)
        if point is None:
            return [float("inf"), float("inf")]
        n, exact = point
        pred = lamf * float(n) ** muf * v.eval_float(n)
        if pred == 0:
            return [float("inf"), float("inf")]
        out.append(abs(float(exact) - pred) / abs(pred))
    return out


def _positive_roots_desc(char: Poly) -> list:
    roots = isolate_real_roots(char)
    pos = []
    for r in roots:
        while r.lo < 0 < r.hi:
            r.refine()
        if r.lo >= 0 and not (r.is_rational() and r.as_fraction() == 0):
            pos.append(r)
    pos.reverse()
    return pos


def ratio_expansion(
    rec: Recurrence,
    K: int,
    rho: Optional[int] = None,
    table: Optional[TermTable] = None,
) -> RatioExpansion:
    """Expand a(n+1)/a(n) to K correction orders past the growth term."""
    if K < 1:
        raise ValueError("K must be >= 1")
    mu, e0, on_edge = dominant_edge(rec)
    char = edge_polynomial(rec, mu, on_edge)
    roots = _positive_roots_desc(char)
    diagnostics: dict = {
        "newtonPoints": newton_points(rec),
        "mu": str(mu),
        "edgePolynomial": [str(c) for c in char.coeffs],
        "branches": [],
    }
    if not roots:
        raise ExpansionError(
            "edge polynomial has no positive real root; the dominant balance "
            "is not a positive growth branch",
            diagnostics,
        )
    if table is None:
        table = TermTable(rec)
    rho_base = rho if rho is not None else mu.denominator
    rho_options = (rho_base,) if rho is not None else (rho_base, 2 * rho_base, 4 * rho_base)
    for root in roots:
        if root.is_rational():
            lam, lam_poly = root.as_fraction(), None
        else:
            nf = NumberField(root)
            lam, lam_poly = nf.generator(), nf.modulus
        entry: dict = {"lambdaApprox": root.approx()}
        for rho_try in rho_options:
            T = K * rho_try
            try:
                cs = _solve_stages(rec, lam, mu, e0, rho_try, T)
            except _Resonance as res:
                entry["status"] = f"resonance at stage {res.stage} with rho={rho_try}"
                continue
            v = AsymSeries(
                [(Fraction(0), 1)]
                + [(Fraction(i, rho_try), c) for i, c in enumerate(cs, start=1)],
                Fraction(T + 1, rho_try),
            )
            res40, res80 = _empirical_residuals(table, lam, mu, v)
            entry["residuals"] = (res40, res80)
            if res80 < 1e-3 and res80 <= 0.75 * res40 + 1e-12:
                entry["status"] = "accepted"
                diagnostics["branches"].append(entry)
                return RatioExpansion(
                    lam=lam,
                    lam_poly=lam_poly,
                    mu=mu,
                    rho=rho_try,
                    v=v,
                    coeffs=cs,
                    diagnostics=diagnostics,
                )
            entry["status"] = "rejected by exact-term comparison"
            break
        diagnostics["branches"].append(dict(entry))
    raise ExpansionError(
        "no growth branch matches the exact terms; if every branch reports "
        "resonance, retry with an explicit larger rho",
        diagnostics,
    )


# -- induced expansions ----------------------------------------------------------


def u_expansion(rx: RatioExpansion, scaling: str = "none") -> AsymSeries:
    """u_n = a(n-1)a(n+1)/a(n)^2 = r(n)/r(n-1) as a series; optional
    factorial scaling multiplies by n/(n+1)."""
    beta = rx.v.error_order
    u = binomial_power(-1, -rx.mu, beta)
    u = u * rx.v * series_inv(shift_series(rx.v, -1, beta), beta)
    if scaling == "factorial":
        u = u * binomial_power(1, -1, beta)
    elif scaling != "none":
        raise ValueError(f"unknown scaling {scaling!r}")
    return u.truncate(beta)


def phi_u_expansion(u: AsymSeries, order=None) -> AsymSeries:
    """u-ratio of the centered sequence b_n = a_n^2 - a_{n-1}a_{n+1}.

    Uses the exact identity u{b}_n = u_n^2 (u_{n-1}-1)(u_{n+1}-1)/(u_n-1)^2
    on the series level: write 1 - u = lead(L) n^{-alpha} g(n) with g
    leading 1, then the ratio splits into shifted-g, shifted-lead and
    binomial factors.  `order` asks for o(n^-order) in the result,
    capped by what the accuracy of u supports.
    """
    if u.error_order is None and order is None:
        raise ValueError("phi_u_expansion of an exact series needs an explicit order")
    if not u.terms or u.terms[0] != (Fraction(0), RatFunc.one()):
        raise ValueError("u must have leading term exactly 1")
    D = AsymSeries.one() - u
    if not D.terms:
        raise ValueError("1 - u vanishes to working order; need a nonzero r1")
    alpha, lead = D.leading()
    if alpha <= 0:
        raise ValueError("u must tend to 1 from a positive-order correction")
    rel_candidates = []
    if order is not None:
        rel_candidates.append(Fraction(order))
    if u.error_order is not None:
        rel_candidates.append(u.error_order - alpha)
    rel = min(rel_candidates)
    if rel <= 0:
        raise ValueError("u is not accurate enough for any phi-ratio term")
    w = u.truncate(alpha + rel)
    D = (AsymSeries.one() - w).truncate(alpha + rel)
    g = AsymSeries([(e - alpha, c / lead) for e, c in D.terms], rel)
    f_part = binomial_power(1, -alpha, rel) * binomial_power(-1, -alpha, rel)
    if not lead.is_constant():
        inv_lead = lead ** (-1)
        f_part = f_part * compose_coef_shift(lead, 1, rel).scale(inv_lead)
        f_part = f_part * compose_coef_shift(lead, -1, rel).scale(inv_lead)
    gi = series_inv(g, rel)
    out = (w * w) * f_part * shift_series(g, 1, rel) * shift_series(g, -1, rel) * gi * gi
    return out.truncate(rel)
