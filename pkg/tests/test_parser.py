"""Recurrence text forms: grammar, normalization, printing, operator import."""

from __future__ import annotations

from fractions import Fraction as F

import pytest

from turancert.algebra import Poly
from turancert.corpus import ENTRIES, get
from turancert.parser import (
    ParseError,
    parse_operator,
    parse_recurrence,
    poly_text,
    recurrence_to_text,
)
from turancert.sequences import Recurrence


class TestGrammar:
    def test_order_one(self):
        r = parse_recurrence("(4*n+2)*a(n+1) - (n+2)*a(n) = 0 ; a(0)=1")
        assert r == get("inverse-catalan").recurrence

    def test_negative_shifts_normalize(self):
        r = parse_recurrence("n*a(n) - a(n-1) - a(n-2) = 0 ; a(0)=1, a(1)=1")
        assert r.order == 2
        assert r.coeffs[0] == Poly([2, 1])
        assert r.coeffs[1] == Poly([1])
        assert r.coeffs[2] == Poly([1])

    def test_juxtaposition_and_pasted_minus(self):
        r = parse_recurrence(
            "(n+4)*a(n+2) − (2n+5)*a(n+1) − 3(n+1)*a(n) = 0 ; a(0)=1, a(1)=1"
        )
        assert r == get("motzkin").recurrence

    def test_rational_coefficients_clear(self):
        r = parse_recurrence("a(n+1) - 1/2*a(n) = 0 ; a(0)=1")
        assert r.coeffs[0] == Poly([2])
        assert r.coeffs[1] == Poly([1])

    def test_denominators_clear(self):
        r = parse_recurrence("a(n+2)/(n+1) = a(n)/(n+2) ; a(0)=1, a(1)=1")
        assert r.coeffs[0] == Poly([2, 1])
        assert r.coeffs[1] == Poly([])
        assert r.coeffs[2] == Poly([1, 1])

    def test_common_factor_removed(self):
        r = parse_recurrence("2*a(n+1) - 2*a(n) = 0 ; a(0)=1")
        assert r.coeffs[0] == Poly([1])

    def test_leading_sign_normalized(self):
        r = parse_recurrence("-a(n+1) + a(n) = 0 ; a(0)=1")
        assert r.coeffs[0] == Poly([1])
        assert r.coeffs[1] == Poly([1])

    def test_powers_and_nesting(self):
        r = parse_recurrence("(n+2)^2*a(n+2) - ((n+1)^2 + (n+1))*a(n) = 0 ; 1, 1")
        assert r.coeffs[0] == Poly([4, 4, 1])
        assert r.coeffs[2] == Poly([2, 3, 1])

    def test_bare_initials(self):
        r = parse_recurrence("(4*n+2)*a(n+1) - (n+2)*a(n) = 0 ; 1")
        assert r.initials == (F(1),)

    def test_fractional_initials(self):
        r = parse_recurrence("a(n+1) - a(n) = 0 ; a(0)=-3/2")
        assert r.initials == (F(-3, 2),)


class TestGrammarErrors:
    def test_degenerate(self):
        with pytest.raises(ParseError, match="degenerate"):
            parse_recurrence("a(n) = a(n)")

    def test_single_shift(self):
        with pytest.raises(ParseError, match="single shift"):
            parse_recurrence("n*a(n+1) = 0 ; 1")

    def test_nonlinear(self):
        with pytest.raises(ParseError, match="linear"):
            parse_recurrence("a(n)*a(n+1) = 1 ; 1")

    def test_inhomogeneous(self):
        with pytest.raises(ParseError, match="inhomogeneous"):
            parse_recurrence("a(n+1) - a(n) = 1 ; 1")

    def test_sequence_power(self):
        with pytest.raises(ParseError, match="power"):
            parse_recurrence("a(n)^2 - a(n+1) = 0 ; 1")

    def test_divide_by_sequence(self):
        with pytest.raises(ParseError, match="divide"):
            parse_recurrence("a(n+1)/a(n) = 2 ; 1")

    def test_bad_shift_argument(self):
        with pytest.raises(ParseError, match="integer shift"):
            parse_recurrence("a(2*n) - a(n) = 0 ; 1")

    def test_missing_initials(self):
        with pytest.raises(ParseError, match="missing initials"):
            parse_recurrence("a(n+2) - a(n) = 0")

    def test_initials_gap(self):
        with pytest.raises(ParseError, match="without gaps"):
            parse_recurrence("a(n+2) - a(n) = 0 ; a(0)=1, a(2)=1")

    def test_initials_duplicate(self):
        with pytest.raises(ParseError, match="twice"):
            parse_recurrence("a(n+2) - a(n) = 0 ; a(0)=1, a(0)=2")

    def test_initials_mixed_forms(self):
        with pytest.raises(ParseError, match="mixed"):
            parse_recurrence("a(n+2) - a(n) = 0 ; a(0)=1, 2")

    def test_position_reported(self):
        with pytest.raises(ParseError) as err:
            parse_recurrence("a(n+1) @ a(n) = 0 ; 1")
        assert err.value.pos == 7
        assert "position 7" in str(err.value)

    def test_unknown_symbol(self):
        with pytest.raises(ParseError, match="unknown symbol"):
            parse_recurrence("a(n+1) - x*a(n) = 0 ; 1")

    def test_missing_equals(self):
        with pytest.raises(ParseError, match="'='"):
            parse_recurrence("a(n+1) - a(n) ; 1")

    def test_trailing_junk(self):
        with pytest.raises(ParseError, match="trailing"):
            parse_recurrence("a(n+1) - a(n) = 0 ; 1 ; 2")

    def test_non_integer_power(self):
        with pytest.raises(ParseError):
            parse_recurrence("n^(1/2)*a(n+1) - a(n) = 0 ; 1")


class TestOperatorImport:
    def test_apery_operator(self):
        r = parse_operator(
            "(n+2)^3 N^2 - (2n+3)(17n^2+51n+39) N + (n+1)^3 ; a(0)=1, a(1)=5"
        )
        assert r == get("apery").recurrence

    def test_explicit_equals_zero(self):
        a = parse_operator("N^2 - N - 1 = 0 ; a(0)=0, a(1)=1")
        b = parse_operator("N^2 - N - 1 ; a(0)=0, a(1)=1")
        assert a == b
        assert a.coeffs[0] == Poly([1])

    def test_ore_commutation(self):
        # N*n = (n+1)*N exactly, so the difference annihilates everything
        with pytest.raises(ParseError, match="degenerate"):
            parse_operator("N*n - (n+1)*N ; 1")

    def test_ore_power(self):
        a = parse_operator("(n*N)^2 - 1 ; a(0)=1, a(1)=1")
        b = parse_operator("n*(n+1)*N^2 - 1 ; a(0)=1, a(1)=1")
        assert a == b

    def test_shift_of_coefficients(self):
        a = parse_operator("N^2*n - N ; a(0)=1, a(1)=1")
        b = parse_operator("(n+2)*N^2 - N ; a(0)=1, a(1)=1")
        assert a == b

    def test_n_symbol_rejected_in_relation_mode(self):
        with pytest.raises(ParseError, match="unknown symbol"):
            parse_recurrence("N^2 - N - 1 = 0 ; 1, 1")


class TestPrinting:
    @pytest.mark.parametrize("name", sorted(ENTRIES))
    def test_round_trip_corpus(self, name):
        rec = ENTRIES[name].recurrence
        assert parse_recurrence(recurrence_to_text(rec)) == rec

    def test_round_trip_zero_middle_coefficient(self):
        rec = parse_recurrence("a(n+2)/(n+1) = a(n)/(n+2) ; a(0)=1, a(1)=1")
        assert parse_recurrence(recurrence_to_text(rec)) == rec
        assert "a(n+1)" not in recurrence_to_text(rec)

    def test_round_trip_fractional_initials(self):
        rec = Recurrence([Poly([1]), Poly([1])], [F(2, 3)], name="x")
        assert parse_recurrence(recurrence_to_text(rec)) == rec

    def test_poly_text(self):
        assert poly_text(Poly([F(1, 2), 0, -3])) == "-3*n^2 + 1/2"
        assert poly_text(Poly([])) == "0"
        assert poly_text(Poly([0, 1]), "x") == "x"
