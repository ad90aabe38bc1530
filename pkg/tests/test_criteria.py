"""Verdict logic for the cubic Turan form and iterated log-concavity."""

from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from turancert.algebra import Poly, RatFunc, sign_at_infinity
from turancert.asymptotics import (
    AsymSeries,
    phi_u_expansion,
    ratio_expansion,
    u_expansion,
    u_power,
    u_power_log,
)
from turancert.corpus import get
from turancert.criteria import (
    UnForm,
    llc_level_coefficients,
    llc_threshold,
    llogconcave_asymptotic,
    llogconcave_verdict,
    to_un_form,
    turan3_asymptotic,
    turan3_verdict,
)
from turancert.sequences import Recurrence, TermTable, phi_values


def S(*terms, err=None):
    return AsymSeries([(F(e), c) for e, c in terms], None if err is None else F(err))


def L_func(num, den=(1,)):
    return RatFunc(Poly([F(c) for c in num]), Poly([F(c) for c in den]))


def u_of(name, order=4, scaling="none"):
    rec = get(name).recurrence
    return u_expansion(ratio_expansion(rec, order), scaling=scaling)


class TestUnForm:
    def test_split_ic(self):
        un = to_un_form(u_of("inverse-catalan"))
        assert un.m == 3
        assert un.alpha1 == 2
        assert un.r1.constant_value() == F(-3, 2)
        assert un.alpha_last == 4
        assert un.error_order == 5

    def test_leading_must_be_one(self):
        with pytest.raises(ValueError):
            to_un_form(S((0, 2), (2, -1), err=3))
        with pytest.raises(ValueError):
            to_un_form(S((1, 1), err=3))

    def test_term_validation(self):
        with pytest.raises(ValueError):
            UnForm([(F(0), L_func([1]))], None)
        with pytest.raises(ValueError):
            UnForm([(F(2), L_func([1])), (F(2), L_func([1]))], None)
        with pytest.raises(ValueError):
            UnForm([(F(2), L_func([0]))], None)

    def test_degenerate(self):
        un = UnForm([], None)
        assert un.m == 0


class TestTuran3:
    def test_inverse_catalan_holds(self):
        v = turan3_asymptotic(u_of("inverse-catalan"))
        assert (v.result, v.rule) == ("holds", "turan3.critical.limit")
        assert any("alpha_1 = 2" in line for line in v.trace)

    def test_involutions_holds(self):
        v = turan3_asymptotic(u_of("involutions"))
        assert (v.result, v.rule) == ("holds", "turan3.subcritical")

    def test_motzkin_scaled_holds(self):
        v = turan3_verdict(get("motzkin").recurrence, scaling="factorial")
        assert (v.result, v.rule) == ("holds", "turan3.subcritical")

    def test_franel3_scaled_holds(self):
        v = turan3_verdict(get("franel3").recurrence, scaling="factorial")
        assert (v.result, v.rule) == ("holds", "turan3.subcritical")

    def test_narrow_span_truncated_is_retryable(self):
        # u = 1 - 1/n + 1/n^(4/3) + o(n^-3/2): the second term sits closer
        # than one power of n, so the tail may hide non-smooth terms that
        # survive the shift analysis at full size.
        u = S((0, 1), (1, -1), (F(4, 3), 1), err=F(3, 2))
        v = turan3_asymptotic(u)
        assert (v.result, v.rule) == ("inconclusive", "turan3.insufficient-order")
        assert v.retryable

    def test_narrow_span_exact_decides(self):
        # the same terms known exactly leave nothing hidden; the leading
        # -4 r_1^3 / n^3 of the form settles the sign
        u = S((0, 1), (1, -1), (F(4, 3), 1))
        v = turan3_asymptotic(u)
        assert (v.result, v.rule) == ("holds", "turan3.subcritical")

    def test_power_sqrt_fails(self):
        # a_n = n^(1/2): r_1 = -1/2 stays above -1 in the critical regime.
        v = turan3_asymptotic(u_power(F(1, 2), F(7)))
        assert (v.result, v.rule) == ("fails", "turan3.critical.limit")

    def test_power_closed_forms_hold(self):
        assert turan3_asymptotic(u_power(2, None)).result == "holds"
        assert turan3_asymptotic(u_power(3, None)).result == "holds"
        assert turan3_asymptotic(u_power_log(1, 1, F(8))).result == "holds"
        assert turan3_asymptotic(u_power_log(2, 1, F(8))).result == "holds"

    def test_log_convex_fails_before_span_gate(self):
        # r_1 > 0 decides failure even when the visible span is short.
        u = S((0, 1), (1, 1), err=F(3, 2))
        v = turan3_asymptotic(u)
        assert (v.result, v.rule) == ("fails", "turan3.log-convex")

    def test_boundary_r1_equals_minus_one(self):
        u = S((0, 1), (2, -1), (4, 1), err=5)
        v = turan3_asymptotic(u)
        assert (v.result, v.rule) == ("inconclusive", "turan3.boundary")

    def test_deficit_decides_at_limit_minus_one(self):
        below = S((0, 1), (2, L_func([-1, -1], [0, 1])), (3, 1), err=F(9, 2))
        v = turan3_asymptotic(below)
        assert (v.result, v.rule) == ("holds", "turan3.critical.deficit")
        above = S((0, 1), (2, L_func([1, -1], [0, 1])), (3, 1), err=F(9, 2))
        v = turan3_asymptotic(above)
        assert (v.result, v.rule) == ("fails", "turan3.critical.deficit")

    def test_exact_one_is_equality_case(self):
        v = turan3_asymptotic(S((0, 1)))
        assert (v.result, v.rule) == ("holds", "turan3.equality")

    def test_bare_one_truncated_is_retryable(self):
        v = turan3_asymptotic(S((0, 1), err=3))
        assert (v.result, v.rule) == ("inconclusive", "turan3.insufficient-order")
        assert v.retryable

    def test_supercritical_inconclusive(self):
        u = S((0, 1), (3, -1), (5, 1), err=7)
        v = turan3_asymptotic(u)
        assert (v.result, v.rule) == ("inconclusive", "turan3.supercritical")

    def test_short_error_order_is_retryable(self):
        # alpha_1 = 2 needs the n^-6 coefficient, hence error order above 4.
        u = S((0, 1), (2, -3), (3, 1), err=4)
        v = turan3_asymptotic(u)
        assert (v.result, v.rule) == ("inconclusive", "turan3.insufficient-order")
        assert v.retryable


class TestLogConcavityLevels:
    def test_threshold_table(self):
        assert [llc_threshold(k) for k in (1, 2, 3, 4)] == [
            F(0),
            F(-1),
            F(-3, 2),
            F(-7, 4),
        ]
        with pytest.raises(ValueError):
            llc_threshold(0)

    def test_level_must_be_positive(self):
        with pytest.raises(ValueError):
            llogconcave_asymptotic(u_of("inverse-catalan"), 0)

    def test_inverse_catalan_level_lattice(self):
        u = u_of("inverse-catalan")
        assert llogconcave_asymptotic(u, 1).rule == "llc.level1"
        v2 = llogconcave_asymptotic(u, 2)
        assert (v2.result, v2.rule) == ("holds", "llc.critical.threshold")
        # order 4 leaves level 3 beyond the certified horizon
        v3 = llogconcave_asymptotic(u, 3)
        assert (v3.result, v3.rule) == ("inconclusive", "llc.insufficient-order")

    def test_inverse_catalan_level3_is_boundary_after_retry(self):
        v = llogconcave_verdict(get("inverse-catalan").recurrence, 3)
        assert (v.result, v.rule) == ("inconclusive", "llc.boundary")

    def test_level_coefficients_inverse_catalan(self):
        levels = llc_level_coefficients(u_of("inverse-catalan"), 3)
        assert [r.constant_value() for r in levels] == [F(-3, 2), F(-1), F(0)]
        with pytest.raises(ValueError):
            llc_level_coefficients(u_of("inverse-catalan"), 4)

    def test_level_map_matches_phi_iteration(self):
        u = u_of("inverse-catalan", order=8)
        levels = llc_level_coefficients(u, 3)
        p1 = phi_u_expansion(u)
        assert p1.coefficient(F(2)) == levels[1]
        p2 = phi_u_expansion(p1)
        assert p2.coefficient(F(2)).is_zero()

    def test_level_map_matches_phi_subcritical(self):
        u = u_of("motzkin", order=8, scaling="factorial")
        levels = llc_level_coefficients(u, 2)
        assert phi_u_expansion(u).coefficient(F(1)) == levels[1]

    def test_level_map_matches_phi_with_log_terms(self):
        u = u_power_log(2, 1, F(10))
        levels = llc_level_coefficients(u, 2)
        assert phi_u_expansion(u).coefficient(F(2)) == levels[1]

    def test_motzkin_scaled_levels_subcritical(self):
        rec = get("motzkin").recurrence
        for ell in (1, 2, 5):
            v = llogconcave_verdict(rec, ell, scaling="factorial")
            assert v.result == "holds"
        assert llogconcave_verdict(rec, 5, scaling="factorial").rule == "llc.subcritical"

    def test_square_power_holds_every_level(self):
        u = u_power(2, None)
        for ell in (1, 6, 40):
            assert llogconcave_asymptotic(u, ell).result == "holds"

    def test_cube_power_levels(self):
        u = u_power(3, None)
        v = llogconcave_asymptotic(u, 6)
        assert (v.result, v.rule) == ("holds", "llc.critical.threshold")
        levels = llc_level_coefficients(u, 6)
        assert [r.constant_value() for r in levels] == [
            F(-3),
            F(-4),
            F(-6),
            F(-10),
            F(-18),
            F(-34),
        ]

    def test_square_log_power_level6(self):
        u = u_power_log(2, 1, F(14))
        v = llogconcave_asymptotic(u, 6)
        assert (v.result, v.rule) == ("holds", "llc.critical.threshold")
        for r in llc_level_coefficients(u, 6):
            assert sign_at_infinity(r) < 0

    def test_grant_by_deficit_at_threshold_limit(self):
        # r_1 -> -1 from below: level 2 is granted although the limit sits
        # exactly on the threshold.
        u = S((0, 1), (2, L_func([-1, -1], [0, 1])), (3, 1), err=F(9, 2))
        v = llogconcave_asymptotic(u, 2)
        assert (v.result, v.rule) == ("holds", "llc.critical.threshold")

    def test_threshold_not_met_is_inconclusive(self):
        # -3/4 is negative but above the level-2 threshold -1: the criterion
        # grants nothing beyond level 1 and must not claim failure either.
        u = S((0, 1), (2, L_func([F(-3, 4)])), (3, 1), err=F(9, 2))
        v = llogconcave_asymptotic(u, 2)
        assert (v.result, v.rule) == ("inconclusive", "llc.threshold")

    def test_log_convex_fails(self):
        u = S((0, 1), (1, 1), err=F(3, 2))
        v = llogconcave_asymptotic(u, 3)
        assert (v.result, v.rule) == ("fails", "llc.log-convex")

    def test_equality_case(self):
        assert llogconcave_asymptotic(S((0, 1)), 4).rule == "llc.equality"
        v = llogconcave_asymptotic(S((0, 1), err=3), 4)
        assert v.retryable

    def test_exact_levels_match_sign_predictions(self):
        # phi^2 of the inverse Catalan numbers is eventually positive, as the
        # level-2 grant predicts.
        table = TermTable(get("inverse-catalan").recurrence)
        vals = phi_values(table, 2, 100, 160)
        assert all(v > 0 for v in vals)


class TestDrivers:
    def test_factorial_ancestor_is_log_convex(self):
        # a(n+1) = (n+1) a(n), a(0) = 1: the factorials themselves.
        rec = Recurrence([Poly([1]), Poly([1, 1])], [1], name="factorial")
        v = turan3_verdict(rec)
        assert (v.result, v.rule) == ("fails", "turan3.log-convex")
        v = llogconcave_verdict(rec, 2)
        assert (v.result, v.rule) == ("fails", "llc.log-convex")

    def test_driver_stops_at_cap(self):
        v = llogconcave_verdict(get("inverse-catalan").recurrence, 5, max_order=8)
        assert (v.result, v.rule) == ("inconclusive", "llc.insufficient-order")
        assert v.retryable

    def test_driver_can_reach_deeper_levels(self):
        v = llogconcave_verdict(get("inverse-catalan").recurrence, 4, max_order=16)
        assert v.rule in ("llc.threshold", "llc.boundary", "llc.critical.threshold")

    def test_verdict_serializes(self):
        v = turan3_verdict(get("inverse-catalan").recurrence)
        blob = json.dumps(v.to_dict())
        back = json.loads(blob)
        assert back["result"] == "holds"
        assert back["rule"] == v.rule
        assert isinstance(back["trace"], list)
