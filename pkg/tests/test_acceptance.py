"""Acceptance suite: one test per exit criterion, pass/fail line printed.

Every tolerance is pinned here; run with ``pytest -s tests/test_acceptance.py``
to see the per-criterion report lines.
"""

import math
import time

import pytest

from zetaglue.asymptotics import a0_constant, s_alpha, s_alpha_pair
from zetaglue.cylinder import BoundaryCondition as BC, CylinderSpec, log_det_cylinder, series_sum
from zetaglue.gluing import GluingConfig, glue_neumann_check, glue_robin_check
from zetaglue.interface_ops import qd0_det_segment, qd_det_segment, qd_matrix_segment
from zetaglue.oracle import SecularProblem, relative_log_det
from zetaglue.special import hurwitz_zeta, log_gamma
from zetaglue.spectra import Circle, FlatTorus, Point, explicit_mirror, heat_coefficients
from zetaglue.zreg import log_det_star, zeta_point

TWO_PI = 2.0 * math.pi
CIRCLE = Circle(TWO_PI)
POINT = Point()


def report(name, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_1_segment_dirichlet_pair():
    worst, worst_dt = 0.0, 0.0
    for L in (0.5, 1.0, 2.0, math.pi):
        t0 = time.perf_counter()
        r = log_det_cylinder(CylinderSpec(POINT, L, BC.dirichlet(), BC.dirichlet()))
        dt = time.perf_counter() - t0
        worst = max(worst, abs(r.log_det - math.log(2.0 * L)))
        worst_dt = max(worst_dt, dt)
    report(
        "criterion 1 (segment D/D closed form)",
        worst < 1e-12 and worst_dt < 0.010,
        f"max |log_det - ln 2L| = {worst:.3e} (< 1e-12), max runtime {worst_dt*1e3:.2f} ms (< 10 ms)",
    )


def test_criterion_2_segment_robin_pair():
    worst = 0.0
    worst_oracle = 0.0
    t0 = time.perf_counter()
    for L, alpha in ((1.0, 1.0), (2.0, 0.5)):
        r = log_det_cylinder(CylinderSpec(POINT, L, BC.robin(alpha), BC.robin(alpha)))
        expect = math.log(2.0 * alpha * (L * alpha + 2.0))
        worst = max(worst, abs(r.log_det - expect))
        rel = relative_log_det(
            SecularProblem(L, BC.robin(alpha), BC.robin(alpha)),
            SecularProblem(L, BC.dirichlet(), BC.dirichlet()),
            count=10000,
        )
        worst_oracle = max(worst_oracle, abs(rel.value - (expect - math.log(2.0 * L))))
    dt = time.perf_counter() - t0
    report(
        "criterion 2 (segment Robin/Robin + oracle)",
        worst < 1e-12 and worst_oracle < 1e-6 and dt < 2.0 * 2,
        f"closed-form gap {worst:.3e} (< 1e-12), oracle gap {worst_oracle:.3e} (< 1e-6), "
        f"{dt:.2f} s for two configs at 10^4 roots each (< 2 s each)",
    )


def test_criterion_3_boundary_matrix_identity():
    import numpy as np

    worst = 0.0
    for lam in (0.1, 1.0, 10.0, 100.0):
        for alpha in (0.5, 1.0, 2.0):
            for L in (0.5, 1.0, 2.0):
                mat, closed = qd_matrix_segment(lam, alpha, L)
                worst = max(worst, abs(np.linalg.det(mat) - closed) / abs(closed))
    limit_gap = 0.0
    for alpha, L in ((1.0, 2.0), (0.5, 1.0)):
        limit_gap = max(
            limit_gap,
            abs(qd_det_segment(1e-22, alpha, L).real - qd0_det_segment(alpha, L)),
        )
    report(
        "criterion 3 (boundary-operator matrix identity)",
        worst < 1e-12 and limit_gap < 1e-10,
        f"grid relative gap {worst:.3e} (< 1e-12), zero-parameter limit gap {limit_gap:.3e} (< 1e-10)",
    )


def test_criterion_4_neumann_gluing():
    worst, worst_dt = 0.0, 0.0
    configs = [(2.0, 0.7)] + [(L, f * L) for L in (1.0, 2.0, 4.0) for f in (0.2, 0.5, 0.8)]
    for L, a in configs:
        t0 = time.perf_counter()
        rep = glue_neumann_check(GluingConfig(CIRCLE, L, a, 0.0))
        worst_dt = max(worst_dt, time.perf_counter() - t0)
        worst = max(worst, rep.residual)
        assert rep.phase_match
    report(
        "criterion 4 (Neumann gluing residuals)",
        worst < 1e-8 and worst_dt < 1.0,
        f"max residual {worst:.3e} (< 1e-8) over {len(configs)} configs, max runtime {worst_dt*1e3:.1f} ms (< 1 s)",
    )


def test_criterion_5_robin_gluing():
    worst, worst_dt = 0.0, 0.0
    n = 0
    for L in (1.0, 2.0, 4.0):
        for f in (0.2, 0.5, 0.8):
            for alpha in (0.1, 0.3, 0.9):
                t0 = time.perf_counter()
                rep = glue_robin_check(GluingConfig(CIRCLE, L, f * L, alpha))
                worst_dt = max(worst_dt, time.perf_counter() - t0)
                worst = max(worst, rep.residual)
                assert rep.phase_match
                n += 1
    report(
        "criterion 5 (Robin gluing residuals + phases)",
        worst < 1e-8 and worst_dt < 1.0,
        f"max residual {worst:.3e} (< 1e-8) over {n} configs, max runtime {worst_dt*1e3:.1f} ms (< 1 s)",
    )


def test_criterion_6_circle_closed_forms():
    det_closed = log_det_star(CIRCLE).log_modulus
    det_numeric = log_det_star(CIRCLE, backend="numeric").log_modulus
    det_gap = abs(det_numeric - 2.0 * math.log(TWO_PI))
    fp_c = zeta_point(CIRCLE, -0.5, backend="closed")
    fp_n = zeta_point(CIRCLE, -0.5, backend="numeric")
    fp_gap = max(
        abs(fp_c.value - (-math.pi / (3.0 * TWO_PI))),
        abs(fp_n.value - fp_c.value),
    )
    res_gap = max(abs(fp_c.residue), abs(fp_n.residue))
    ok = (
        abs(det_closed - 2.0 * math.log(TWO_PI)) < 1e-13
        and det_gap < 1e-8
        and fp_gap < 1e-8
        and res_gap < 1e-10
    )
    report(
        "criterion 6 (circle closed forms, backend equivalence)",
        ok,
        f"|numeric Det* - ln ell^2| = {det_gap:.3e} (< 1e-8), finite-part gap {fp_gap:.3e} (< 1e-8), residues {res_gap:.1e}",
    )


def test_criterion_7_asymptotic_constants():
    heat_t = heat_coefficients(FlatTorus(TWO_PI, TWO_PI), 1)
    worst_pair = 0.0
    for alpha in (0.1, 0.7, 1.9):
        lhs = s_alpha(heat_t, alpha) + s_alpha(heat_t, -alpha)
        rhs = s_alpha_pair(heat_t, alpha)
        worst_pair = max(worst_pair, abs(lhs - rhs))
    heat_c = heat_coefficients(CIRCLE, 1)
    a0_even = abs(a0_constant([(heat_c, 0.9)], m=2))
    lam, alpha, L = 1.0e6, 1.0, 1.0
    b0_gap = abs(
        math.log(qd_det_segment(lam, alpha, L).real)
        - math.log(lam + alpha * alpha + 2.0 * alpha * math.sqrt(lam))
    )
    ok = worst_pair < 1e-12 and a0_even == 0.0 and b0_gap < 1e-4
    report(
        "criterion 7 (expansion-constant identities)",
        ok,
        f"pair identity gap {worst_pair:.3e} (< 1e-12), even-dimension a0 = {a0_even}, "
        f"segment constant extraction {b0_gap:.3e} (< 1e-4 at 1e6)",
    )


def test_criterion_8_hurwitz_gamma_identity():
    worst = 0.0
    for a in (0.3, 1.0, 2.5):
        _, deriv = hurwitz_zeta(0.0, a, with_derivative_at_0=True)
        worst = max(
            worst, abs(deriv - (log_gamma(a) - 0.5 * math.log(2.0 * math.pi)))
        )
    report(
        "criterion 8 (Hurwitz-derivative/log-gamma identity)",
        worst < 1e-12,
        f"max residual {worst:.3e} (< 1e-12) over a in {{0.3, 1, 2.5}}",
    )


def test_criterion_9_truncation_robustness():
    gaps = []
    # explicit data at doubled spectral cutoff
    for lam in (625.0,):
        a = log_det_star(explicit_mirror(CIRCLE, lam)).log_modulus
        b = log_det_star(explicit_mirror(CIRCLE, 2.0 * lam)).log_modulus
        gaps.append(abs(a - b))
    # boundary series at doubled internal cutoffs
    base = series_sum(CIRCLE, 1.0, "robin_both", alpha=0.4)
    boosted = series_sum(CIRCLE, 1.0, "robin_both", alpha=0.4, min_cutoff=4.0 * base.cutoff)
    gaps.append(abs(base.value - boosted.value))
    # full determinants at sharply tightened tolerance (forces larger cutoffs)
    for bc, alpha in (((BC.neumann(), BC.neumann()), 0.0), ((BC.robin(0.3), BC.robin(0.3)), 0.3)):
        a = log_det_cylinder(CylinderSpec(CIRCLE, 2.0, *bc), tol=1e-10).log_det
        b = log_det_cylinder(CylinderSpec(CIRCLE, 2.0, *bc), tol=1e-15).log_det
        gaps.append(abs(a - b))
    worst = max(gaps)
    report(
        "criterion 9 (truncation robustness)",
        worst < 1e-9,
        f"max determinant change under doubled cutoffs {worst:.3e} (< 1e-9)",
    )
