"""Text forms of recurrences.

The main grammar accepts relations written with explicit sequence terms,

    (n+4)*a(n+2) - (2*n+5)*a(n+1) - 3*(n+1)*a(n) = 0 ; a(0)=1, a(1)=1

with integer and rational literals, n, + - * / ^, parentheses, and either
a(i)=value assignments or bare comma-separated values after the semicolon.
Adjacent factors multiply, so pasted text like (2n+3)(n+1) works.  Shifts
are normalized so the lowest index is a(n); coefficients are cleared to
integer polynomials.

`parse_operator` imports the shift-operator notation instead: a polynomial
in n and N with N*f(n) = f(n+1)*N, e.g. (n+2)^3*N^2 - (2n+3)*(17n^2+51n+39)*N
+ (n+1)^3, annihilating the sequence.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional

from .algebra import Poly, RatFunc, poly_gcd
from .sequences import Recurrence


class ParseError(ValueError):
    """Syntax or structural error in a recurrence text, with a position."""

    def __init__(self, message: str, pos: Optional[int] = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


# -- tokens ---------------------------------------------------------------------

_PUNCT = "()+-*/^=,;"
_MINUS_ALIASES = {"−", "–", "—"}  # pasted dashes read as minus


class _Tok:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind: str, value, pos: int):
        self.kind = kind  # "num", "name", one of _PUNCT, or "end"
        self.value = value
        self.pos = pos


def _tokenize(text: str) -> list[_Tok]:
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _MINUS_ALIASES:
            out.append(_Tok("-", "-", i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Tok("num", int(text[i:j]), i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(_Tok("name", text[i:j], i))
            i = j
            continue
        if c in _PUNCT:
            out.append(_Tok(c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    out.append(_Tok("end", None, n))
    return out


# -- linear values ----------------------------------------------------------------

_ZERO = RatFunc.zero()
_ONE = RatFunc.one()


class _Lin:
    """Scalar rational function plus a combination of a(n+k) terms.

    In operator mode the combination is a polynomial in the shift N instead,
    with the scalar slot fused into the N^0 coefficient at the end.
    """

    __slots__ = ("scalar", "terms")

    def __init__(self, scalar: RatFunc = _ZERO, terms: Optional[dict] = None):
        self.scalar = scalar
        self.terms = terms or {}

    @property
    def is_scalar(self) -> bool:
        return not self.terms

    def map_terms(self, fn) -> "_Lin":
        return _Lin(fn(self.scalar), {k: fn(v) for k, v in self.terms.items()})


def _lin_add(a: _Lin, b: _Lin, sign: int) -> _Lin:
    terms = dict(a.terms)
    for k, v in b.terms.items():
        w = terms.get(k, _ZERO) + (v if sign > 0 else -v)
        if w.is_zero():
            terms.pop(k, None)
        else:
            terms[k] = w
    return _Lin(a.scalar + (b.scalar if sign > 0 else -b.scalar), terms)


class _Parser:
    def __init__(self, text: str, operator_mode: bool):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.op_mode = operator_mode

    # token plumbing

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {self._show(t)}", t.pos)
        return self.next()

    def _show(self, t: _Tok) -> str:
        return "end of input" if t.kind == "end" else repr(str(t.value))

    # expression grammar

    def expr(self) -> _Lin:
        acc = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next()
            acc = _lin_add(acc, self.term(), 1 if op.kind == "+" else -1)
        return acc

    def term(self) -> _Lin:
        acc = self.factor()
        while True:
            t = self.peek()
            if t.kind in ("*", "/"):
                self.next()
                acc = self._combine(acc, self.factor(), t.kind, t.pos)
            elif t.kind in ("num", "name", "("):
                # adjacency is multiplication
                acc = self._combine(acc, self.factor(), "*", t.pos)
            else:
                return acc

    def factor(self) -> _Lin:
        sign = 1
        while self.peek().kind in ("+", "-"):
            if self.next().kind == "-":
                sign = -sign
        base = self.power()
        return base if sign > 0 else base.map_terms(lambda r: -r)

    def power(self) -> _Lin:
        base = self.atom()
        if self.peek().kind != "^":
            return base
        t = self.next()
        exp = self._int_exponent()
        if base.is_scalar:
            if exp >= 0:
                return _Lin(base.scalar ** exp)
            if base.scalar.is_zero():
                raise ParseError("zero raised to a negative power", t.pos)
            return _Lin(_ONE / base.scalar ** (-exp))
        if not self.op_mode:
            raise ParseError("sequence terms cannot be raised to a power", t.pos)
        if exp < 0:
            raise ParseError("shift operators cannot have negative powers", t.pos)
        acc = _Lin(_ONE)
        for _ in range(exp):
            acc = self._combine(acc, base, "*", t.pos)
        return acc

    def _int_exponent(self) -> int:
        sign = 1
        if self.peek().kind == "(":
            self.next()
            while self.peek().kind == "-":
                self.next()
                sign = -sign
            v = self.expect("num").value
            self.expect(")")
            return sign * v
        while self.peek().kind == "-":
            self.next()
            sign = -sign
        return sign * self.expect("num").value

    def atom(self) -> _Lin:
        t = self.peek()
        if t.kind == "num":
            self.next()
            return _Lin(RatFunc.const(Fraction(t.value)))
        if t.kind == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        if t.kind == "name":
            self.next()
            if t.value == "n":
                return _Lin(RatFunc.variable())
            if t.value == "a" and not self.op_mode:
                return self._seq_term(t.pos)
            if t.value == "N" and self.op_mode:
                return _Lin(terms={1: _ONE})
            raise ParseError(f"unknown symbol {t.value!r}", t.pos)
        raise ParseError(f"expected a value, found {self._show(t)}", t.pos)

    def _seq_term(self, pos: int) -> _Lin:
        self.expect("(")
        arg = self.expr()
        self.expect(")")
        if not arg.is_scalar:
            raise ParseError("nested sequence terms are not supported", pos)
        shift = arg.scalar - RatFunc.variable()
        if not shift.is_constant():
            raise ParseError("sequence argument must be n plus an integer shift", pos)
        off = shift.constant_value()
        off = Fraction(off)
        if off.denominator != 1:
            raise ParseError("sequence shift must be an integer", pos)
        return _Lin(terms={int(off): _ONE})

    # products, with the Ore rule N*f(n) = f(n+1)*N in operator mode

    def _combine(self, a: _Lin, b: _Lin, op: str, pos: int) -> _Lin:
        if op == "/":
            if not b.is_scalar:
                what = "shift operators" if self.op_mode else "sequence terms"
                raise ParseError(f"cannot divide by {what}", pos)
            if b.scalar.is_zero():
                raise ParseError("division by zero", pos)
            if self.op_mode and not a.is_scalar and not b.scalar.is_constant():
                raise ParseError(
                    "dividing a shift operator by a function of n is ambiguous; "
                    "clear the denominator by hand",
                    pos,
                )
            inv = _ONE / b.scalar
            return a.map_terms(lambda r: r * inv)
        if a.is_scalar:
            s = a.scalar
            return b.map_terms(lambda r: s * r)
        if b.is_scalar:
            if self.op_mode and not b.scalar.is_constant():
                # fall through to the Ore product with b as an N^0 operator
                pass
            else:
                s = b.scalar
                return a.map_terms(lambda r: r * s)
        if not self.op_mode:
            raise ParseError(
                "products of sequence terms are not supported; "
                "the relation must be linear",
                pos,
            )
        out: dict[int, RatFunc] = {}
        a_terms = dict(a.terms)
        if not a.scalar.is_zero():
            a_terms[0] = a_terms.get(0, _ZERO) + a.scalar
        b_terms = dict(b.terms)
        if not b.scalar.is_zero():
            b_terms[0] = b_terms.get(0, _ZERO) + b.scalar
        for k, q in a_terms.items():
            for j, r in b_terms.items():
                w = out.get(k + j, _ZERO) + q * r.shift(k)
                if w.is_zero():
                    out.pop(k + j, None)
                else:
                    out[k + j] = w
        return _Lin(terms=out)

    # initial values

    def initials(self) -> list[Fraction]:
        if self.peek().kind == "end":
            return []
        assigned: dict[int, Fraction] = {}
        bare: list[Fraction] = []
        while True:
            t = self.peek()
            if t.kind == "name" and t.value == "a":
                self.next()
                self.expect("(")
                idx = self.expect("num").value
                self.expect(")")
                self.expect("=")
                if bare:
                    raise ParseError("mixed bare and a(i)= initial values", t.pos)
                if idx in assigned:
                    raise ParseError(f"initial value a({idx}) given twice", t.pos)
                assigned[idx] = self._const_value(t.pos)
            else:
                if assigned:
                    raise ParseError("mixed bare and a(i)= initial values", t.pos)
                bare.append(self._const_value(t.pos))
            if self.peek().kind != ",":
                break
            self.next()
        if assigned:
            want = list(range(len(assigned)))
            if sorted(assigned) != want:
                raise ParseError(
                    "initial values must cover a(0)..a(m) without gaps"
                )
            return [assigned[i] for i in want]
        return bare

    def _const_value(self, pos: int) -> Fraction:
        v = self.expr()
        if not v.is_scalar or not v.scalar.is_constant():
            raise ParseError("initial values must be constants", pos)
        return Fraction(v.scalar.constant_value())


# -- normalization ----------------------------------------------------------------


def _poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(poly_gcd(a, b))


def _relation_to_recurrence(
    lin: _Lin, initials: list[Fraction], name: str
) -> Recurrence:
    if not lin.terms:
        raise ParseError("degenerate relation: no sequence terms remain")
    if not lin.scalar.is_zero():
        raise ParseError(
            "inhomogeneous relation: constant part "
            "does not cancel and is not supported"
        )
    kmin = min(lin.terms)
    shifted = {k - kmin: r.shift(-kmin) for k, r in lin.terms.items()}
    d = max(shifted)
    if d == 0:
        raise ParseError("degenerate relation: only a single shift appears")
    den = Poly.const(1)
    for r in shifted.values():
        den = _poly_lcm(den, r.den)
    polys = {k: r.num * den.exact_div(r.den) for k, r in shifted.items()}
    # p0*a(n+d) on the left, +p_k*a(n+d-k) on the right
    coeffs = [polys.get(d, Poly())]
    for k in range(1, d + 1):
        coeffs.append(-polys.get(d - k, Poly()))
    if coeffs[0].is_zero():
        raise ParseError("degenerate relation: the highest shift cancels")
    scalars = [Fraction(c) for p in coeffs for c in p.coeffs if c]
    m = lcm(*(c.denominator for c in scalars))
    g = gcd(*(c.numerator * (m // c.denominator) for c in scalars))
    coeffs = [p.scale(Fraction(m, g)) for p in coeffs]
    if coeffs[0].leading() < 0:
        coeffs = [-p for p in coeffs]
    try:
        return Recurrence(coeffs, initials, name=name)
    except ValueError as exc:
        raise ParseError(f"missing initials: {exc}") from exc


def _parse(text: str, name: str, operator_mode: bool) -> Recurrence:
    p = _Parser(text, operator_mode)
    lhs = p.expr()
    if p.peek().kind == "=":
        p.next()
        rhs = p.expr()
        lin = _lin_add(lhs, rhs, -1)
    elif operator_mode:
        lin = lhs
    else:
        raise ParseError("expected '=' in the relation", p.peek().pos)
    if operator_mode and not lin.scalar.is_zero():
        # the plain part of an operator polynomial is its N^0 coefficient
        terms = dict(lin.terms)
        w = terms.get(0, _ZERO) + lin.scalar
        if w.is_zero():
            terms.pop(0, None)
        else:
            terms[0] = w
        lin = _Lin(terms=terms)
    inits: list[Fraction] = []
    if p.peek().kind == ";":
        p.next()
        inits = p.initials()
    tail = p.peek()
    if tail.kind != "end":
        raise ParseError(f"unexpected trailing input {p._show(tail)}", tail.pos)
    return _relation_to_recurrence(lin, inits, name)


def parse_recurrence(text: str, name: str = "") -> Recurrence:
    """Parse a relation in a(n+k) form, with optional initial values."""
    return _parse(text, name, operator_mode=False)


def parse_operator(text: str, name: str = "") -> Recurrence:
    """Import a shift-operator polynomial in n and N annihilating the sequence."""
    return _parse(text, name, operator_mode=True)


# -- printing ---------------------------------------------------------------------


def _frac_text(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_text(p: Poly, var: str = "n") -> str:
    """Plain text of a polynomial, highest power first."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = Fraction(p[k])
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if k == 0:
            body = _frac_text(c)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if c == 1 else f"{_frac_text(c)}*{power}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _coef_term(p: Poly, shift: int) -> tuple[str, str]:
    """(sign, text) for p * a(n+shift), with the sign pulled out."""
    neg = p.leading() < 0
    if neg:
        p = -p
    seq = "a(n)" if shift == 0 else f"a(n+{shift})"
    if p.degree == 0:
        c = Fraction(p[0])
        text = seq if c == 1 else f"{_frac_text(c)}*{seq}"
    else:
        text = f"({poly_text(p)})*{seq}"
    return ("-" if neg else "+", text)


def recurrence_to_text(rec: Recurrence) -> str:
    """Render a recurrence so that parse_recurrence round-trips it."""
    d = rec.order
    terms = [(rec.coeffs[0], d)]
    for k in range(1, d + 1):
        p = -rec.coeffs[k]
        if not p.is_zero():
            terms.append((p, d - k))
    pieces = []
    for idx, (p, shift) in enumerate(terms):
        sign, text = _coef_term(p, shift)
        if idx == 0:
            pieces.append(text if sign == "+" else f"-{text}")
        else:
            pieces.append(f"{sign} {text}")
    inits = ", ".join(
        f"a({i})={_frac_text(v)}" for i, v in enumerate(rec.initials)
    )
    out = " ".join(pieces) + " = 0"
    return f"{out} ; {inits}" if inits else out
