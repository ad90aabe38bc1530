"""P-recursive sequences: exact terms, derived values, range checks.

A recurrence of order d is stored with cleared denominators as

    p0(n) * a(n+d) = p1(n) * a(n+d-1) + ... + pd(n) * a(n),   n >= 0,

with integer-coefficient polynomials and rational initial values
a(0..m), m >= d-1.  Terms are exact Fractions; integer-valued sequences
stay integral automatically.  A disk cache (append-only, length-prefixed
big integers) makes repeated long runs cheap.
"""

from __future__ import annotations

import hashlib
import os
import struct
import threading
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import Poly

CACHE_MAGIC = b"TCTERMS1"

_file_locks: dict[str, threading.Lock] = {}
_file_locks_guard = threading.Lock()


class CacheError(RuntimeError):
    """Raised when a term-cache file cannot be decoded."""


def _lock_for(path: str) -> threading.Lock:
    with _file_locks_guard:
        if path not in _file_locks:
            _file_locks[path] = threading.Lock()
        return _file_locks[path]


class Recurrence:
    """Linear recurrence with polynomial coefficients and initial values."""

    __slots__ = ("coeffs", "initials", "name")

    def __init__(
        self,
        coeffs: Sequence[Poly],
        initials: Sequence,
        name: str = "",
    ):
        coeffs = tuple(c if isinstance(c, Poly) else Poly(c) for c in coeffs)
        if len(coeffs) < 2:
            raise ValueError("recurrence needs order >= 1 (p0 and at least p1)")
        if coeffs[0].is_zero():
            raise ValueError("leading coefficient p0 must be nonzero")
        for c in coeffs:
            if not c.is_rational():
                raise ValueError("recurrence coefficients must be rational polynomials")
        initials = tuple(Fraction(v) for v in initials)
        d = len(coeffs) - 1
        if len(initials) < d:
            raise ValueError(f"order {d} needs at least {d} initial values")
        self.coeffs = coeffs
        self.initials = initials
        self.name = name

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, Recurrence):
            return self.coeffs == other.coeffs and self.initials == other.initials
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.initials))

    def __repr__(self) -> str:
        return f"Recurrence(order={self.order}, name={self.name!r})"

    def cache_key(self) -> str:
        h = hashlib.sha256()
        for c in self.coeffs:
            h.update(repr([(q.numerator, q.denominator) for q in c.coeffs]).encode())
            h.update(b"|")
        h.update(repr([(q.numerator, q.denominator) for q in self.initials]).encode())
        return h.hexdigest()[:24]

    def residual(self, window: Sequence[Fraction], n: int) -> Fraction:
        """p0(n)a(n+d) - sum pk(n)a(n+d-k) for window = a(n)..a(n+d)."""
        d = self.order
        acc = self.coeffs[0].eval(n) * window[d]
        for k in range(1, d + 1):
            acc -= self.coeffs[k].eval(n) * window[d - k]
        return acc


def _encode_int(v: int) -> bytes:
    raw = v.to_bytes((v.bit_length() + 8) // 8, "big", signed=True)
    return struct.pack(">I", len(raw)) + raw


class TermTable:
    """Exact terms of a recurrence with optional disk persistence."""

    def __init__(self, rec: Recurrence, cache_dir: Optional[str] = None):
        self.rec = rec
        self.cache_dir = cache_dir
        self._vals: list[Fraction] = list(rec.initials)
        self._persisted = 0
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)
            self._load()

    # -- cache ----------------------------------------------------------

    def _path(self) -> str:
        return os.path.join(self.cache_dir, f"{self.rec.cache_key()}.terms")

    def _load(self) -> None:
        path = self._path()
        if not os.path.exists(path):
            return
        with _lock_for(path):
            with open(path, "rb") as fh:
                blob = fh.read()
        if len(blob) < len(CACHE_MAGIC) or blob[: len(CACHE_MAGIC)] != CACHE_MAGIC:
            raise CacheError(f"bad cache header in {path}")
        vals: list[Fraction] = []
        pos = len(CACHE_MAGIC)
        try:
            while pos < len(blob):
                nums = []
                for _ in range(2):
                    (ln,) = struct.unpack_from(">I", blob, pos)
                    pos += 4
                    if ln == 0 or pos + ln > len(blob):
                        raise CacheError(f"truncated cache entry in {path}")
                    nums.append(int.from_bytes(blob[pos : pos + ln], "big", signed=True))
                    pos += ln
                vals.append(Fraction(nums[0], nums[1]))
        except (struct.error, ValueError, ZeroDivisionError) as exc:
            raise CacheError(f"corrupt cache file {path}: {exc}") from None
        # sanity: cached prefix must agree with the declared initial values
        for i, v in enumerate(self.rec.initials):
            if i < len(vals) and vals[i] != v:
                raise CacheError(f"cache/initials mismatch at index {i} in {path}")
        if len(vals) > len(self._vals):
            self._vals = vals
        self._persisted = len(vals)

    def flush(self) -> None:
        """Append any newly computed terms to the cache file."""
        if not self.cache_dir or len(self._vals) <= self._persisted:
            return
        path = self._path()
        with _lock_for(path):
            fresh = not os.path.exists(path)
            with open(path, "ab") as fh:
                if fresh:
                    fh.write(CACHE_MAGIC)
                for v in self._vals[self._persisted :]:
                    fh.write(_encode_int(v.numerator))
                    fh.write(_encode_int(v.denominator))
        self._persisted = len(self._vals)

    # -- terms -----------------------------------------------------------

    def ensure(self, n: int) -> None:
        d = self.rec.order
        coeffs = self.rec.coeffs
        vals = self._vals
        while len(vals) <= n:
            m = len(vals) - d  # recurrence index producing a(m+d)
            p0 = coeffs[0].eval(m)
            if p0 == 0:
                raise ZeroDivisionError(
                    f"leading coefficient vanishes at n={m}; cannot advance"
                )
            acc = Fraction(0)
            for k in range(1, d + 1):
                acc += coeffs[k].eval(m) * vals[m + d - k]
            vals.append(acc / p0)

    def value(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("negative index")
        self.ensure(n)
        return self._vals[n]

    def values(self, lo: int, hi: int) -> list[Fraction]:
        self.ensure(hi)
        return self._vals[lo : hi + 1]

    def __len__(self) -> int:
        return len(self._vals)


# -- derived values ---------------------------------------------------------

SCALINGS = ("none", "factorial")


def _check_scaling(scaling: str) -> None:
    if scaling not in SCALINGS:
        raise ValueError(f"unknown scaling {scaling!r}; expected one of {SCALINGS}")


def ratio_value(table: TermTable, n: int, scaling: str = "none") -> Fraction:
    """a(n)/a(n-1) of the (optionally 1/n!-scaled) sequence."""
    _check_scaling(scaling)
    prev = table.value(n - 1)
    if prev == 0:
        raise ZeroDivisionError(f"a({n-1}) = 0")
    r = table.value(n) / prev
    if scaling == "factorial":
        r = r / n
    return r


def u_value(table: TermTable, n: int, scaling: str = "none") -> Fraction:
    """u_n = a(n-1)a(n+1)/a(n)^2; the 1/n! scaling multiplies by n/(n+1)."""
    _check_scaling(scaling)
    an = table.value(n)
    if an == 0:
        raise ZeroDivisionError(f"a({n}) = 0")
    u = table.value(n - 1) * table.value(n + 1) / (an * an)
    if scaling == "factorial":
        u = u * Fraction(n, n + 1)
    return u


def _scaled_window(table: TermTable, n: int, k: int, scaling: str) -> list:
    """Window a(n-1..n+k-2) rescaled by a positive constant.

    For the factorial scaling the window is multiplied by (n+k-2)!, which
    keeps entries integral when the base terms are integers; inequality
    checks only use signs of homogeneous forms, so the rescale is free.
    """
    vals = table.values(n - 1, n + k - 2)
    if scaling == "none":
        return vals
    out = []
    mult = 1
    for i in range(len(vals) - 1, -1, -1):
        out.append(vals[i] * mult)
        mult *= n - 1 + i  # next factor of (n+k-2)!/(index)!
    out.reverse()
    return out


def turan3_value(table: TermTable, n: int, scaling: str = "none") -> Fraction:
    """4(a_n^2-a_{n-1}a_{n+1})(a_{n+1}^2-a_n a_{n+2}) - (a_n a_{n+1}-a_{n-1}a_{n+2})^2.

    Computed on the scaled sequence; homogeneous of degree 4, so the
    factorial scaling is applied as an integer window rescale divided
    back out ((n+2)!^4).
    """
    _check_scaling(scaling)
    w = _scaled_window(table, n, 4, scaling)
    val = 4 * (w[1] * w[1] - w[0] * w[2]) * (w[2] * w[2] - w[1] * w[3]) - (
        w[1] * w[2] - w[0] * w[3]
    ) ** 2
    if scaling == "factorial":
        # window entries were a_k * (n+2)!/k!; the form is degree-4 homogeneous
        val = val / Fraction(_factorial(n + 2)) ** 4
    return val


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def turan3_sign(table: TermTable, n: int, scaling: str = "none") -> int:
    """Sign of the degree-3 Turan form at n (cheap: no normalization)."""
    _check_scaling(scaling)
    w = _scaled_window(table, n, 4, scaling)
    val = 4 * (w[1] * w[1] - w[0] * w[2]) * (w[2] * w[2] - w[1] * w[3]) - (
        w[1] * w[2] - w[0] * w[3]
    ) ** 2
    return (val > 0) - (val < 0)


def logconcave_sign(table: TermTable, n: int, scaling: str = "none") -> int:
    """Sign of a_n^2 - a_{n-1} a_{n+1} on the scaled sequence."""
    _check_scaling(scaling)
    w = _scaled_window(table, n, 3, scaling)
    val = w[1] * w[1] - w[0] * w[2]
    return (val > 0) - (val < 0)


def phi_values(
    table: TermTable, level: int, lo: int, hi: int, scaling: str = "none"
) -> list[Fraction]:
    """Values of the k-fold iterate of phi{a}_n = a_{n+1}^2 - a_n a_{n+2}.

    Returns the level-`level` sequence on indices lo..hi (base terms a
    optionally 1/n!-scaled first).
    """
    _check_scaling(scaling)
    if level < 0:
        raise ValueError("level must be >= 0")
    need_hi = hi + 2 * level
    base = table.values(lo, need_hi)
    if scaling == "factorial":
        f = _factorial(lo) if lo >= 0 else 1
        scaled = []
        for i, v in enumerate(base):
            scaled.append(v / f)
            f *= lo + i + 1
        base = scaled
    cur = base
    for _ in range(level):
        cur = [cur[i + 1] * cur[i + 1] - cur[i] * cur[i + 2] for i in range(len(cur) - 2)]
    return cur


PREDICATES: dict[str, Callable[[TermTable, int, str], int]] = {
    "turan3": turan3_sign,
    "log-concave": logconcave_sign,
}


def check_inequality_range(
    table: TermTable,
    predicate: str,
    lo: int,
    hi: int,
    scaling: str = "none",
    strict: bool = True,
) -> list[int]:
    """Indices in [lo, hi] where the named inequality fails.

    `strict` demands sign > 0; otherwise >= 0.  The table is filled once,
    so disjoint ranges may afterwards be checked concurrently.
    """
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    fn = PREDICATES[predicate]
    table.ensure(hi + 2)
    bad = []
    for n in range(lo, hi + 1):
        s = fn(table, n, scaling)
        if s < 0 or (strict and s == 0):
            bad.append(n)
    return bad
