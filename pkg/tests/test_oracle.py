"""Root-finding oracle vs the closed-form segment determinants."""

import math

import pytest

from zetaglue.cylinder import BoundaryCondition as BC, CylinderSpec, log_det_cylinder
from zetaglue.errors import ValidationError
from zetaglue.oracle import SecularProblem, relative_log_det, segment_eigenvalues
from zetaglue.spectra import Point


def closed_log_det(L, bl, br):
    return log_det_cylinder(CylinderSpec(Point(), L, bl, br)).log_det


class TestSegmentEigenvalues:
    def test_dirichlet_pair(self):
        got = segment_eigenvalues(SecularProblem(1.0, BC.dirichlet(), BC.dirichlet()), 3)
        assert got == pytest.approx(
            [math.pi**2, 4 * math.pi**2, 9 * math.pi**2], rel=1e-14
        )

    def test_neumann_pair_includes_zero(self):
        got = segment_eigenvalues(SecularProblem(1.0, BC.neumann(), BC.neumann()), 3)
        assert got == pytest.approx([0.0, math.pi**2, 4 * math.pi**2], rel=1e-14)

    def test_mixed_pair(self):
        got = segment_eigenvalues(SecularProblem(2.0, BC.neumann(), BC.dirichlet()), 2)
        assert got == pytest.approx(
            [(0.5 * math.pi / 2.0) ** 2, (1.5 * math.pi / 2.0) ** 2], rel=1e-14
        )

    def test_robin_roots_satisfy_secular_equation(self):
        L, alpha = 1.0, 1.0
        ev = segment_eigenvalues(SecularProblem(L, BC.robin(alpha), BC.robin(alpha)), 12)
        for mu in ev:
            k = math.sqrt(mu)
            g = (k * k - alpha * alpha) * math.sin(k * L) - 2 * alpha * k * math.cos(k * L)
            assert abs(g) < 1e-9 * max(1.0, k * k)

    def test_robin_interlaces_and_gap_decays(self):
        L, alpha = 1.0, 1.0
        n = 64
        ev = segment_eigenvalues(SecularProblem(L, BC.robin(alpha), BC.robin(alpha)), n)
        ks = [math.sqrt(v) for v in ev]
        # root j sits in ((j-1) pi / L, j pi / L) and approaches the left
        # endpoint like 1/k: the scaled gap stabilises
        gaps = []
        for j, k in enumerate(ks, start=1):
            assert (j - 1) * math.pi / L < k < j * math.pi / L
            gaps.append((k - (j - 1) * math.pi / L) * k)
        assert abs(gaps[-1] - 2.0 * alpha) < 0.05  # gap ~ 2 alpha / k

    def test_weyl_count(self):
        lam = (40.0 * math.pi) ** 2
        ev = segment_eigenvalues(SecularProblem(1.0, BC.robin(1.0), BC.robin(1.0)), 50)
        below = sum(1 for v in ev if v <= lam)
        weyl = math.sqrt(lam) / math.pi
        assert abs(below - weyl) <= 2

    def test_rejects_negative_robin(self):
        with pytest.raises(ValidationError):
            SecularProblem(1.0, BC.robin(-1.0), BC.robin(-1.0))


class TestRelativeLogDet:
    def test_self_relative_is_zero(self):
        p = SecularProblem(1.0, BC.dirichlet(), BC.dirichlet())
        assert relative_log_det(p, p, count=512).value == 0.0

    @pytest.mark.parametrize("L,alpha", [(1.0, 1.0), (2.0, 0.5), (0.5, 2.0)])
    def test_robin_vs_dirichlet_closed_forms(self, L, alpha):
        p = SecularProblem(L, BC.robin(alpha), BC.robin(alpha))
        ref = SecularProblem(L, BC.dirichlet(), BC.dirichlet())
        rel = relative_log_det(p, ref, count=4096)
        expect = closed_log_det(L, BC.robin(alpha), BC.robin(alpha)) - closed_log_det(
            L, BC.dirichlet(), BC.dirichlet()
        )
        assert abs(rel.value - expect) < 1e-6

    def test_neumann_zero_mode_reconciliation(self):
        p = SecularProblem(1.0, BC.neumann(), BC.neumann())
        ref = SecularProblem(1.0, BC.dirichlet(), BC.dirichlet())
        rel = relative_log_det(p, ref, count=1024)
        assert rel.zero_modes == (1, 0)
        # modified determinant of N/N equals the D/D determinant here
        assert rel.value == pytest.approx(0.0, abs=1e-9)

    def test_neumann_robin_vs_dirichlet(self):
        p = SecularProblem(1.0, BC.neumann(), BC.robin(1.0))
        ref = SecularProblem(1.0, BC.dirichlet(), BC.dirichlet())
        rel = relative_log_det(p, ref, count=4096)
        expect = closed_log_det(1.0, BC.neumann(), BC.robin(1.0)) - closed_log_det(
            1.0, BC.dirichlet(), BC.dirichlet()
        )
        assert abs(rel.value - expect) < 1e-6

    def test_half_counting_mismatch_rejected(self):
        p = SecularProblem(1.0, BC.neumann(), BC.dirichlet())
        ref = SecularProblem(1.0, BC.dirichlet(), BC.dirichlet())
        with pytest.raises(ValidationError):
            relative_log_det(p, ref, count=512)

    def test_lengths_must_match(self):
        p = SecularProblem(1.0, BC.dirichlet(), BC.dirichlet())
        ref = SecularProblem(2.0, BC.dirichlet(), BC.dirichlet())
        with pytest.raises(ValidationError):
            relative_log_det(p, ref, count=512)

    def test_pairing_ratio_decay(self):
        # |ln ratio_k| <= C / k^2 empirically once the lists are aligned
        L, alpha = 1.0, 1.0
        n = 2000
        ev_p = segment_eigenvalues(SecularProblem(L, BC.robin(alpha), BC.robin(alpha)), n + 1)
        ev_r = segment_eigenvalues(SecularProblem(L, BC.dirichlet(), BC.dirichlet()), n)
        ratios = [math.log(a / b) for a, b in zip(ev_p[1:], ev_r)]
        fitted_c = max(abs(r) * (k + 1) ** 2 for k, r in enumerate(ratios))
        assert fitted_c < 5.0
        assert abs(ratios[-1]) < 5.0 / n**2

    def test_extrapolated_values_cauchy_beyond_1e3(self):
        # the extrapolated relative determinants stabilise to 1e-8 once
        # more than ~10^3 eigenvalues enter the partial sums
        p = SecularProblem(1.0, BC.robin(1.0), BC.robin(1.0))
        ref = SecularProblem(1.0, BC.dirichlet(), BC.dirichlet())
        v1 = relative_log_det(p, ref, count=2048).value
        v2 = relative_log_det(p, ref, count=8192).value
        assert abs(v1 - v2) < 1e-8
