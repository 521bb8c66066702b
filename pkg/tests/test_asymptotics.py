"""Closed-form expansion constants and their parity/consistency identities."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaglue.asymptotics import (
    a0_constant,
    asym_constants,
    b0_constant,
    c_k,
    s_alpha,
    s_alpha_pair,
    w0_w1,
)
from zetaglue.errors import MissingHeatCoefficientError, ValidationError
from zetaglue.interface_ops import qd_det_segment
from zetaglue.spectra import Circle, FlatTorus, HeatExpansion, Point, heat_coefficients

TWO_PI = 2.0 * math.pi
LN2 = math.log(2.0)

HEAT_POINT = heat_coefficients(Point(), 2)
HEAT_CIRCLE = heat_coefficients(Circle(TWO_PI), 2)
HEAT_TORUS = heat_coefficients(FlatTorus(TWO_PI, TWO_PI), 2)
A0_TORUS = HEAT_TORUS.coeffs[0]

# synthetic curved-like heat data (nonzero higher coefficients) to exercise
# every index range; dimensions 4 and 5 reach the k >= 2 branches
HEAT_D4 = HeatExpansion(4, (0.9, -0.21, 0.05), exact=True)
HEAT_D5 = HeatExpansion(5, (1.3, 0.4, -0.07), exact=True)


class TestCk:
    def test_first_values(self):
        assert c_k(1) == pytest.approx(-2.0 * LN2, abs=1e-15)
        assert c_k(2) == 0.0
        assert c_k(3) == pytest.approx(-2.0 * LN2 + 2.0, abs=1e-15)
        assert c_k(4) == 1.0
        assert c_k(5) == pytest.approx(-2.0 * LN2 + 2.0 + 2.0 / 3.0, abs=1e-15)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            c_k(0)


class TestSAlpha:
    def test_vanishes_at_zero_shift(self):
        for heat in (HEAT_CIRCLE, HEAT_TORUS, HEAT_D4):
            assert s_alpha(heat, 0.0) == 0.0

    def test_point_has_empty_sum(self):
        assert s_alpha(HEAT_POINT, 1.7) == 0.0

    def test_circle_pair_cancels(self):
        a = 0.83
        assert s_alpha(HEAT_CIRCLE, a) + s_alpha(HEAT_CIRCLE, -a) == pytest.approx(
            0.0, abs=1e-15
        )
        assert s_alpha_pair(HEAT_CIRCLE, a) == 0.0

    def test_torus_closed_value(self):
        a = 0.7
        assert s_alpha(HEAT_TORUS, a) == pytest.approx(-A0_TORUS * a * a, rel=1e-14)
        assert s_alpha_pair(HEAT_TORUS, a) == pytest.approx(
            -2.0 * A0_TORUS * a * a, rel=1e-14
        )

    @pytest.mark.parametrize("heat", [HEAT_TORUS, HEAT_D4, HEAT_D5],
                             ids=["torus", "d4", "d5"])
    @pytest.mark.parametrize("alpha", [0.1, 0.7, 1.9, -1.2])
    def test_pair_consistency(self, heat, alpha):
        lhs = s_alpha_pair(heat, alpha)
        rhs = s_alpha(heat, alpha) + s_alpha(heat, -alpha)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))

    def test_missing_coefficient_is_named(self):
        short = HeatExpansion(4, (0.9,), exact=False)
        with pytest.raises(MissingHeatCoefficientError) as exc:
            s_alpha(short, 1.0)
        assert exc.value.index >= 1


class TestW0W1:
    def test_odd_dimension_vanishes(self):
        assert w0_w1(HEAT_CIRCLE, 1.3) == (0.0, 0.0)
        assert w0_w1(HEAT_D5, 0.8) == (0.0, 0.0)

    def test_flat_torus(self):
        assert w0_w1(HEAT_TORUS, 0.0) == (0.0, 0.0)
        w0, w1 = w0_w1(HEAT_TORUS, 1.0)
        assert w0 == pytest.approx(2.0 * A0_TORUS, rel=1e-14)
        assert w1 == 0.0  # the k >= 2 sum is empty in dimension 2

    def test_d4_index_ranges(self):
        a = 1.1
        w0, w1 = w0_w1(HEAT_D4, a)
        a0_, a1_, a2_ = HEAT_D4.coeffs
        assert w0 == pytest.approx(a2_ + 2.0 * (a1_ * a * a + a0_ * a**4 / 2.0), rel=1e-13)
        assert w1 == pytest.approx(-a0_ * a**4 / 2.0 * 1.0, rel=1e-13)


class TestA0B0:
    def test_even_total_dimension_vanishes(self):
        # circle cross-section: cylinder dimension m = 2 is even
        assert a0_constant([(HEAT_CIRCLE, 0.9)], m=2) == 0.0

    def test_flat_torus_neumann(self):
        assert a0_constant([(HEAT_TORUS, 0.0)], m=3) == 0.0

    def test_flat_torus_general_shift(self):
        a = 0.7
        got = a0_constant([(HEAT_TORUS, a)], m=3)
        assert got == pytest.approx(-LN2 * 2.0 * A0_TORUS * a * a, rel=1e-14)

    def test_components_must_agree_in_dimension(self):
        with pytest.raises(ValidationError):
            a0_constant([(HEAT_TORUS, 0.1), (HEAT_CIRCLE, 0.1)], m=3)

    def test_b0_zero_shift(self):
        assert b0_constant([(HEAT_TORUS, 0.0), (HEAT_TORUS, 0.0)]) == 0.0

    def test_b0_segment_is_zero(self):
        assert b0_constant([(HEAT_POINT, 1.0), (HEAT_POINT, 1.0)]) == 0.0

    def test_b0_two_torus_components(self):
        a = 0.6
        got = b0_constant([(HEAT_TORUS, a), (HEAT_TORUS, a)])
        assert got == pytest.approx(-2.0 * s_alpha(HEAT_TORUS, a), rel=1e-14)

    @given(st.floats(min_value=-2.0, max_value=2.0))
    @settings(max_examples=30, deadline=None)
    def test_parities(self, alpha):
        c = asym_constants(HEAT_D4, alpha)
        cm = asym_constants(HEAT_D4, -alpha)
        assert c.s_minus_alpha == pytest.approx(cm.s_alpha, abs=1e-13)
        assert c.w0 == pytest.approx(cm.w0, abs=1e-13)
        assert c.w1 == pytest.approx(cm.w1, abs=1e-13)
        assert c.a0 == pytest.approx(cm.a0, abs=1e-13)


class TestSegmentConstantExtraction:
    def test_large_parameter_limit(self):
        # the boundary-determinant log approaches its algebraic leading
        # part with no constant offset (b0 = 0 on the segment)
        lam, alpha, L = 1.0e6, 1.0, 1.0
        det = qd_det_segment(lam, alpha, L).real
        lead = lam + alpha * alpha + 2.0 * alpha * math.sqrt(lam)
        assert abs(math.log(det) - math.log(lead)) < 1e-4
