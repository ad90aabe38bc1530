"""Exact algebra kernel: polynomials, rational functions, roots, fields."""

from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turancert.algebra import (
    AlgebraicReal,
    NumberField,
    Poly,
    RatFunc,
    cauchy_root_bound,
    count_roots_halfopen,
    eventual_positivity_threshold,
    isolate_real_roots,
    limit_at_infinity,
    no_roots_above,
    poly_gcd,
    rational_roots_small,
    rationalize,
    sign_at_infinity,
    squarefree_part,
    sturm_chain,
)

X = Poly([0, 1])

small_rats = st.fractions(
    min_value=-8, max_value=8, max_denominator=6
)


def polys(max_deg=5):
    return st.lists(small_rats, min_size=0, max_size=max_deg + 1).map(Poly)


# -- polynomials -------------------------------------------------------------


def test_poly_trims_trailing_zeros():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert Poly([0, 0]).is_zero()
    assert Poly([0]).degree == -1
    assert Poly([5]).degree == 0


def test_poly_arithmetic_basics():
    p = (X + 1) * (X - 1)
    assert p == X**2 - 1
    assert p.eval(F(3)) == 8
    assert (X**3).derivative() == 3 * X**2
    assert (2 * X + 3) - (X + 3) == X


def test_compose_shift():
    p = X**2
    assert p.compose_shift(1) == X**2 + 2 * X + 1
    assert p.compose_shift(-1) == X**2 - 2 * X + 1
    q = 3 * X**3 - X + 7
    n = F(11)
    assert q.compose_shift(F(5, 2)).eval(n) == q.eval(n + F(5, 2))


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_divmod_reconstructs(a, b):
    if b.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.divmod(b)
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys(3), polys(3), polys(2))
@settings(max_examples=40, deadline=None)
def test_gcd_divides_both(a, b, c):
    a, b = a * c, b * c
    g = poly_gcd(a, b)
    if a.is_zero() and b.is_zero():
        assert g.is_zero()
        return
    if not a.is_zero():
        assert (a % g).is_zero()
    if not b.is_zero():
        assert (b % g).is_zero()
    if not c.is_zero() and not (a.is_zero() and b.is_zero()):
        assert g.degree >= c.degree


def test_squarefree_part_drops_multiplicity():
    p = (X - 1) ** 3 * (X + 2) ** 2 * (X**2 + 1)
    s = squarefree_part(p)
    expected = (X - 1) * (X + 2) * (X**2 + 1)
    assert s.monic() == expected.monic()


# -- rational functions -------------------------------------------------------


def test_ratfunc_canonical_integer_pair():
    r = RatFunc(Poly([F(1, 2), F(1, 2)]), Poly([F(1, 4), 0, F(1, 4)]))
    # (n+1)/2 over (n^2+1)/4 clears to 2(n+1)/(n^2+1)
    assert list(r.num.coeffs) == [2, 2]
    assert list(r.den.coeffs) == [1, 0, 1]


def test_ratfunc_cancels_common_factor():
    r = RatFunc((X - 1) * (X + 2), (X - 1) * X)
    assert r == RatFunc(X + 2, X)
    assert list(r.den.coeffs) == [0, 1]


def test_ratfunc_denominator_sign_normalized():
    r = RatFunc(Poly([1]), Poly([0, -1]))
    assert r.den.leading() > 0
    assert r.num.leading() < 0


@given(polys(3), polys(3), polys(3))
@settings(max_examples=40, deadline=None)
def test_ratfunc_field_laws(a, b, c):
    if c.is_zero():
        return
    ra, rb = RatFunc(a, c), RatFunc(b, c)
    assert ra + rb == RatFunc(a + b, c)
    assert ra * rb == RatFunc(a * b, c * c)
    assert ra - ra == RatFunc.zero()
    if not b.is_zero():
        assert (ra / RatFunc(b, c)) * RatFunc(b, c) == ra


def test_ratfunc_shift_and_eval():
    r = RatFunc(X, X + 1)  # n/(n+1)
    assert r.eval(F(3)) == F(3, 4)
    assert r.shift(1) == RatFunc(X + 1, X + 2)
    assert not r.defined_at(F(-1))


def test_sign_and_limit_at_infinity():
    assert sign_at_infinity(RatFunc(X - 10**9, X + 1)) == 1
    assert sign_at_infinity(RatFunc(-X**2, Poly([1]))) == -1
    assert limit_at_infinity(RatFunc(3 * X + 1, 2 * X)) == F(3, 2)
    assert limit_at_infinity(RatFunc(Poly([1]), X)) == F(0)
    assert limit_at_infinity(RatFunc(X**2, X)) == "+inf"
    assert limit_at_infinity(RatFunc(-(X**3), X + 5)) == "-inf"


# -- root machinery -----------------------------------------------------------


def test_sturm_counts_roots():
    p = (X - 1) * (X - 2) * (X - 3)
    ch = sturm_chain(p)
    assert count_roots_halfopen(ch, F(0), F(10)) == 3
    assert count_roots_halfopen(ch, F(0), F(5, 2)) == 2
    assert count_roots_halfopen(ch, F(3), F(10)) == 0  # half-open (3, 10]


def test_cauchy_bound_contains_roots():
    p = X**2 - 30 * X + 1
    b = cauchy_root_bound(p)
    for r in isolate_real_roots(p):
        r.refine_below(F(1, 100))
        assert -b <= r.lo and r.hi <= b


def test_isolate_sqrt2():
    roots = isolate_real_roots(X**2 - 2)
    assert len(roots) == 2
    neg, pos = roots
    assert abs(pos.approx() - 2**0.5) < 1e-9
    assert abs(neg.approx() + 2**0.5) < 1e-9
    assert pos.floor() == 1
    assert neg.floor() == -2
    assert not pos.is_rational()


def test_isolate_includes_rational_roots():
    p = (X - F(1, 3)) * (X**2 - 3)
    roots = isolate_real_roots(p)
    assert len(roots) == 3
    rationals = [r.as_fraction() for r in roots if r.is_rational()]
    assert rationals == [F(1, 3)]


def test_sign_of_poly_at_algebraic_point():
    root = isolate_real_roots(X**2 - 2)[-1]
    assert root.sign_of_poly(X - 1) == 1  # sqrt2 > 1
    assert root.sign_of_poly(X - 2) == -1
    assert root.sign_of_poly(X**2 - 2) == 0
    assert root.sign_of_poly(3 * X**2 - 6) == 0


def test_rational_roots_small():
    p = (3 * X - 2) * (X + 5) * (X**2 + 1)
    assert rational_roots_small(p) == [F(-5), F(2, 3)]
    assert rational_roots_small(X**2 + 1) == []


def test_no_roots_above_is_safe():
    p = (X - 7) * (X - 3)
    top = no_roots_above(p)
    assert top >= 7
    ch = sturm_chain(p)
    assert count_roots_halfopen(ch, F(top), F(top + 10**6)) == 0


# thresholds for hand-checked sign windows; each value is minimal


def test_eventual_positivity_threshold_goldens():
    n = X
    cases = [
        (RatFunc(4 * n**2 - 21 * n - 9), 5),
        (RatFunc(Poly([4]), (n + 1) * (n + 2) ** 2), 0),
        (RatFunc(4 * n**3 - 8 * n**2 - 20 * n - 12, (n + 1) ** 4 * (n + 2) ** 2), 3),
        (RatFunc(4 * n**2 - 12 * n - 4, n**2 * (n + 1) * (n + 2) ** 2), 3),
        (
            RatFunc(
                4 * n**5 - 24 * n**4 + 36 * n**3 + 16 * n**2 - 48 * n - 144,
                n**2 * (n + 1) ** 4 * (n + 2) ** 2,
            ),
            3,
        ),
    ]
    for r, expected in cases:
        got = eventual_positivity_threshold(r)
        assert got == expected, (r, got, expected)
        # minimality: positive strictly beyond, not positive at the threshold
        for k in range(got + 1, got + 8):
            assert r.num.eval(F(k)) / r.den.eval(F(k)) > 0
        if got > 0:
            dv = r.den.eval(F(got))
            assert dv == 0 or r.num.eval(F(got)) / dv <= 0


def test_eventual_positivity_rejects_negative():
    with pytest.raises(ValueError):
        eventual_positivity_threshold(RatFunc(Poly([1]) - X))


def test_threshold_skips_denominator_zero():
    # positive for all n > 4, but the denominator vanishes at n = 4
    r = RatFunc(Poly([1]), X - 4)
    assert eventual_positivity_threshold(r) == 4


# -- number fields ------------------------------------------------------------


def sqrt_field(d: int) -> NumberField:
    return NumberField(isolate_real_roots(X**2 - d)[-1])


def test_nf_sqrt2_identity():
    K = sqrt_field(2)
    s = K.generator()
    # 3(17+12s) / (2(3+2s)^2) collapses to the rational 3/2
    val = (3 * (17 + 12 * s)) / (2 * (3 + 2 * s) ** 2)
    assert val.to_fraction() == F(3, 2)


def test_nf_arithmetic_and_sign():
    K = sqrt_field(2)
    s = K.generator()
    assert (s * s).to_fraction() == 2
    assert (s - 1).sign() == 1
    assert (s - F(3, 2)).sign() == -1
    assert ((s + 1) * (s - 1) - 1).sign() == 0
    assert (1 / s) * s == 1
    lo, hi = (3 + 2 * s).approx_interval(F(1, 10**6))
    assert lo <= F(58284271, 10**7) <= hi


def test_nf_reducible_modulus_splits():
    # (x^2-2)(x^2-3) is not irreducible; track sqrt(3) and force splitting
    p = (X**2 - 2) * (X**2 - 3)
    root = isolate_real_roots(p)[-1]
    K = NumberField(root)
    s = K.generator()
    assert (s * s - 3).sign() == 0
    assert (s * s - 2).to_fraction() == 1  # forces modulus shrink to x^2-3
    assert K.degree == 2


def test_nf_division_by_zero_element():
    K = sqrt_field(5)
    s = K.generator()
    with pytest.raises(ZeroDivisionError):
        _ = 1 / (s * s - 5)


def test_rationalize_directions():
    K = sqrt_field(2)
    s = K.generator()
    up = rationalize(s, "up", max_den=1000)
    down = rationalize(s, "down", max_den=1000)
    assert up.denominator <= 1000 and down.denominator <= 1000
    assert down < up
    assert (s - down).sign() >= 0 and (up - s).sign() >= 0
    assert up - down <= F(1, 250)
    # rationals pass through untouched even with a tiny max_den
    assert rationalize(F(22, 7), "up", max_den=3) == F(22, 7)
    assert rationalize(7, "down") == 7


def test_rationalize_exact_nf_rational():
    K = sqrt_field(2)
    s = K.generator()
    v = (3 * (17 + 12 * s)) / (2 * (3 + 2 * s) ** 2)
    assert rationalize(v, "up") == F(3, 2)
    assert rationalize(v, "down") == F(3, 2)


def test_poly_over_nf_scalars_sturm_ready():
    # eventual positivity with an irrational leading coefficient
    K = sqrt_field(2)
    s = K.generator()
    p = Poly([s - 3, K.from_rational(1)])  # n + (sqrt2 - 3), root ~ 1.586
    r = RatFunc(p)
    assert eventual_positivity_threshold(r) == 1
