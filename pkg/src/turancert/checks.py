"""Re-derive every stored corpus artifact and report pass/fail.

Each check recomputes one expected value (terms, growth data, series
coefficients, verdicts, windows, corner polynomials, thresholds) from
scratch and compares exactly.  Results are plain tuples so the CLI can
render them as text or JSON.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional

from .algebra import Poly, RatFunc, eventual_positivity_threshold
from .asymptotics import ratio_expansion, u_expansion
from .certify import (
    CertifyError,
    certify_turan3,
    certify_u_bounds,
    corner_polynomial,
    turan_form,
)
from .corpus import ENTRIES, CorpusEntry
from .criteria import llogconcave_verdict, turan3_verdict
from .sequences import TermTable, turan3_sign, u_value


class CheckResult(tuple):
    """(entry, check, ok, detail)"""

    __slots__ = ()

    def __new__(cls, entry: str, check: str, ok: bool, detail: str = ""):
        return super().__new__(cls, (entry, check, bool(ok), detail))

    entry = property(lambda s: s[0])
    check = property(lambda s: s[1])
    ok = property(lambda s: s[2])
    detail = property(lambda s: s[3])


def _result(entry, check, ok, detail=""):
    return CheckResult(entry, check, ok, detail)


_SCALE = RatFunc(Poly([0, 1]), Poly([1, 1]))  # n/(n+1)


def window_functions(window: dict, scaled: bool) -> tuple[RatFunc, RatFunc]:
    """Bound pair 1 + sum c/n^e per side, times n/(n+1) when scaled."""
    out = []
    for part in ("g", "f"):
        top = max((int(e) for e in window[part]), default=0)
        den = [Fraction(0)] * top + [Fraction(1)]
        num = list(den)
        for e, c in window[part].items():
            num[top - int(e)] += c
        r = RatFunc(Poly(num), Poly(den))
        out.append(r * _SCALE if scaled else r)
    return out[0], out[1]


def _check_terms(e: CorpusEntry, table: TermTable) -> list:
    want = e.expected["terms"]["values"]
    got = table.values(0, len(want) - 1)
    ok = list(got) == list(want)
    return [_result(e.name, "terms", ok, "" if ok else f"got {got[:4]}...")]


def _check_growth(e: CorpusEntry, table: TermTable) -> list:
    want = e.expected["lam"]
    rx = ratio_expansion(e.recurrence, 4, table=table)
    probs = []
    if rx.mu != want["mu"]:
        probs.append(f"mu {rx.mu} != {want['mu']}")
    if rx.rho != want["rho"]:
        probs.append(f"rho {rx.rho} != {want['rho']}")
    if "value" in want:
        if rx.lam_poly is not None or Fraction(rx.lam) != want["value"]:
            probs.append(f"lambda {rx.lam} != {want['value']}")
    else:
        coeffs = None if rx.lam_poly is None else [
            Fraction(c) for c in rx.lam_poly.coeffs
        ]
        minpoly = [Fraction(c) for c in want["minpoly"]]
        if coeffs != minpoly and coeffs != minpoly[::-1]:
            probs.append(f"minimal polynomial {coeffs} != {minpoly}")
        elif abs(float(rx.lam) - want["approx"]) > 1e-3:
            probs.append(f"approx {float(rx.lam):.4f} != {want['approx']}")
    return [_result(e.name, "ratio-growth", not probs, "; ".join(probs))]


def _check_u_series(e: CorpusEntry, table: TermTable) -> list:
    want = e.expected["u_series"]["coeffs"]
    order = int(max(want)) + 1
    u = u_expansion(ratio_expansion(e.recurrence, order, table=table))
    probs = []
    for exp, coef in sorted(want.items()):
        got = u.coefficient(exp)
        if not (got.is_constant() and got.constant_value() == coef):
            probs.append(f"n^-{exp}: {got} != {coef}")
    return [_result(e.name, "u-series", not probs, "; ".join(probs))]


def _check_turan3(e: CorpusEntry, table: TermTable) -> list:
    v = turan3_verdict(e.recurrence, scaling=e.scaling, max_order=8, table=table)
    ok = v.result == e.expected["turan3"]
    detail = "" if ok else f"{v.result} ({v.rule}) != {e.expected['turan3']}"
    return [_result(e.name, "turan3-verdict", ok, detail)]


def _check_llc_level(e: CorpusEntry, table: TermTable) -> list:
    ell = e.expected["llc_level"]
    v = llogconcave_verdict(e.recurrence, ell, scaling=e.scaling, max_order=8, table=table)
    ok = v.result == "holds"
    return [_result(e.name, f"llc-level-{ell}", ok, "" if ok else f"{v.result} ({v.rule})")]


def _check_ht_bounds(e: CorpusEntry, table: TermTable) -> list:
    want = e.expected["ht_bounds"]
    try:
        _, ub = certify_u_bounds(e.recurrence, 4, table=table)
    except CertifyError as exc:
        # not certifiable on this grid; the window constant must still
        # simplify to the stored exact rational in the expansion
        u = u_expansion(ratio_expansion(e.recurrence, 4, table=table))
        probs = []
        for exp, coef in want["d"].items():
            got = u.coefficient(exp)
            if not (got.is_constant() and Fraction(0) + got.constant_value() == coef):
                probs.append(f"n^-{exp}: {got} != {coef}")
        detail = f"window constants only ({exc})" if not probs else "; ".join(probs)
        return [_result(e.name, "ht-bounds", not probs, detail)]
    probs = []
    if dict(ub.kept) != {k: (v, v) for k, v in want["d"].items()}:
        probs.append(f"kept {ub.kept} != {want['d']}")
    if ub.slack_exponent != want["slack_exponent"]:
        probs.append(f"slack exponent {ub.slack_exponent}")
    if ub.valid_from > want["n_max"]:
        probs.append(f"validFrom {ub.valid_from} > {want['n_max']}")
    if not probs:
        for n in range(ub.valid_from + 1, ub.valid_from + 101):
            if not ub.contains(n, u_value(table, n)):
                probs.append(f"sandwich breaks at n={n}")
                break
    return [_result(e.name, "ht-bounds", not probs, "; ".join(probs))]


def _check_corners(e: CorpusEntry, table: TermTable) -> list:
    suite = e.expected["corner_suite"]
    g, f = window_functions(suite["window"], e.scaling == "factorial")
    out = []
    for i, stored in enumerate(suite["corners"]):
        probs = []
        mine = corner_polynomial(g, f, i)
        if mine != RatFunc(Poly(stored["num"]), stored["den"]):
            probs.append("polynomial differs")
        else:
            thr = eventual_positivity_threshold(mine)
            if thr != stored["minimal_threshold"]:
                probs.append(f"threshold {thr} != {stored['minimal_threshold']}")
            if stored["printed_threshold"] < stored["minimal_threshold"]:
                probs.append("printed threshold below the minimal one")
        out.append(_result(e.name, f"corner-{i}", not probs, "; ".join(probs)))
    return out


def _check_holds_from(e: CorpusEntry, table: TermTable) -> list:
    start = e.expected["holds_from"]
    probs = []
    for n in range(start, start + 60):
        if turan3_sign(table, n, e.scaling) <= 0:
            probs.append(f"sign at n={n} not positive")
            break
    if start > 1 and turan3_sign(table, start - 1, e.scaling) > 0:
        probs.append(f"already positive at n={start - 1}")
    out = [_result(e.name, "holds-from", not probs, "; ".join(probs))]
    try:
        cert = certify_turan3(e.recurrence, 4, scaling=e.scaling, table=table)
        ok = cert.holds_from == start
        out.append(
            _result(
                e.name, "certificate", ok,
                "" if ok else f"holdsFrom {cert.holds_from} != {start}",
            )
        )
    except CertifyError as exc:
        out.append(_result(e.name, "certificate", True, f"not certifiable ({exc})"))
    return out


def _check_first_u_index(e: CorpusEntry, table: TermTable) -> list:
    first = e.expected["first_u_index"]
    probs = []
    if u_value(table, first - 1) != 0:
        probs.append(f"u({first - 1}) nonzero")
    for n in range(first, first + 60):
        if u_value(table, n) <= 0:
            probs.append(f"u({n}) not positive")
            break
    return [_result(e.name, "first-u-index", not probs, "; ".join(probs))]


def _check_residual(e: CorpusEntry, table: TermTable) -> list:
    d = e.recurrence.order
    vals = table.values(0, 300 + d)
    bad = [
        n for n in range(0, 300)
        if e.recurrence.residual(vals[n:n + d + 1], n) != 0
    ]
    return [_result(e.name, "residual", not bad, f"nonzero at {bad[:3]}" if bad else "")]


_CHECKERS = {
    "terms": _check_terms,
    "lam": _check_growth,
    "u_series": _check_u_series,
    "turan3": _check_turan3,
    "llc_level": _check_llc_level,
    "ht_bounds": _check_ht_bounds,
    "corner_suite": _check_corners,
    "holds_from": _check_holds_from,
    "first_u_index": _check_first_u_index,
}


def check_entry(entry: CorpusEntry, cache_dir: Optional[str] = None) -> list:
    table = TermTable(entry.recurrence, cache_dir=cache_dir)
    results = []
    for key, fn in _CHECKERS.items():
        if key in entry.expected:
            try:
                results.extend(fn(entry, table))
            except Exception as exc:  # a crash is a failing check, not a crash
                results.append(_result(entry.name, key.replace("_", "-"), False, repr(exc)))
    results.extend(_check_residual(entry, table))
    return results


def rectangle_spot_check(seed: int = 0, count: int = 500) -> CheckResult:
    """min of the corner form over a rectangle is attained at a corner."""
    rng = random.Random(seed)
    for _ in range(count):
        x0 = Fraction(rng.randint(-40, 40), rng.randint(1, 20))
        x1 = x0 + Fraction(rng.randint(0, 30), rng.randint(1, 20))
        y0 = Fraction(rng.randint(-40, 40), rng.randint(1, 20))
        y1 = y0 + Fraction(rng.randint(0, 30), rng.randint(1, 20))
        corner_min = min(
            turan_form(x0, y0), turan_form(x0, y1),
            turan_form(x1, y0), turan_form(x1, y1),
        )
        for _ in range(25):
            x = x0 + (x1 - x0) * Fraction(rng.randint(0, 16), 16)
            y = y0 + (y1 - y0) * Fraction(rng.randint(0, 16), 16)
            if turan_form(x, y) < corner_min:
                return _result(
                    "(global)", "rectangle-minimum", False,
                    f"interior value below corners at ({x}, {y})",
                )
    return _result("(global)", "rectangle-minimum", True, f"{count} rectangles")


def run_all(cache_dir: Optional[str] = None, seed: int = 0, jobs: int = 4) -> list:
    entries = [ENTRIES[k] for k in sorted(ENTRIES)]
    results: list = []
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        for batch in pool.map(lambda e: check_entry(e, cache_dir), entries):
            results.extend(batch)
    results.append(rectangle_spot_check(seed))
    results.sort(key=lambda r: (r.entry, r.check))
    return results
