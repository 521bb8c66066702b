"""Closed-form large-parameter expansion constants for product cylinders.

These are the finite, heat-coefficient-weighted sums that appear as
constant terms in the large-shift asymptotics of the regularized
determinants: the harmonic-type weights c_k, the single-boundary constant
s_alpha and its symmetrized pair, the w0/w1 constants of the weighted
zeta value and determinant, the gluing constant a0, and the
determinant-difference constant b0.  All sums are finite with
rational-arithmetic harmonic factors; empty sums are exactly zero, and
half-integer-indexed heat coefficients (odd cross-section dimension) are
taken as zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import ValidationError
from .special import harmonic, log_gamma, odd_harmonic
from .spectra import HeatExpansion

__all__ = [
    "AsymConstants",
    "c_k",
    "s_alpha",
    "s_alpha_pair",
    "w0_w1",
    "a0_constant",
    "b0_constant",
    "asym_constants",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class AsymConstants:
    """The five expansion constants for one (heat data, alpha) pair."""

    s_alpha: float
    s_minus_alpha: float
    w0: float
    w1: float
    a0: float


def c_k(k: int) -> float:
    """Harmonic-type weight entering the s_alpha sum.

    Even k: sum_{p=1}^{k/2-1} 1/p.  Odd k: -2 ln 2 + 2 sum_{p=1}^{[k/2]}
    1/(2p-1).  Empty sums are zero.
    """
    if k < 1:
        raise ValidationError(f"c_k needs k >= 1, got {k}")
    if k % 2 == 0:
        return harmonic(k // 2 - 1)
    return -2.0 * _LN2 + 2.0 * odd_harmonic(k // 2)


def _ordered_pairs(cross_dim: int):
    """(k, j) with k + 2j = cross_dim, k >= 1, j >= 0."""
    return [(k, (cross_dim - k) // 2) for k in range(1, cross_dim + 1) if (cross_dim - k) % 2 == 0]


def s_alpha(heat: HeatExpansion, alpha: float) -> float:
    """Constant term of the large-shift expansion of the one-sided
    shifted determinant:

        s_alpha = - sum_{k+2j=d, k>=1} (-1)^k a_j alpha^k / k
                    * (2 H_{k-1} - c_k) / Gamma(k/2),

    where d is the cross-section dimension.  Empty for d = 0 and for
    alpha = 0.
    """
    d = heat.cross_dim
    total = 0.0
    for k, j in _ordered_pairs(d):
        a_j = heat.coeff(j)
        if a_j == 0.0 or alpha == 0.0:
            continue
        weight = (2.0 * harmonic(k - 1) - c_k(k)) / math.exp(log_gamma(k / 2.0))
        total -= (-1.0) ** k * a_j * alpha**k / k * weight
    return total


def s_alpha_pair(heat: HeatExpansion, alpha: float) -> float:
    """s_alpha + s_{-alpha} in closed form: zero for odd cross-section
    dimension, and for even dimension

        - sum_{k=1}^{d/2} a_{d/2-k} alpha^(2k) (2 H_{2k-1} - H_{k-1}) / k!.
    """
    d = heat.cross_dim
    if d % 2 == 1 or d == 0:
        return 0.0
    total = 0.0
    for k in range(1, d // 2 + 1):
        a = heat.coeff(d // 2 - k)
        if a == 0.0 or alpha == 0.0:
            continue
        total -= (
            a
            * alpha ** (2 * k)
            * (2.0 * harmonic(2 * k - 1) - harmonic(k - 1))
            / math.factorial(k)
        )
    return total


def w0_w1(heat: HeatExpansion, alpha: float) -> Tuple[float, float]:
    """Constant terms of the weighted zeta value (w0) and of the
    two-sided-factorized determinant (w1); both vanish for odd
    cross-section dimension.
    """
    d = heat.cross_dim
    if d % 2 == 1:
        return 0.0, 0.0
    half = d // 2
    w0 = heat.coeff(half)
    for k in range(1, half + 1):
        w0 += 2.0 * heat.coeff(half - k) * alpha ** (2 * k) / math.factorial(k)
    w1 = 0.0
    for k in range(2, half + 1):
        w1 -= (
            heat.coeff(half - k)
            * alpha ** (2 * k)
            * harmonic(k - 1)
            / math.factorial(k)
        )
    return w0, w1


def a0_constant(components: Sequence[Tuple[HeatExpansion, float]], m: int) -> float:
    """Gluing constant a0 = sum of per-component contributions.

    Each component contributes 0 when the cross-section dimension m-1 is
    odd, and otherwise -ln2 * w0 + w1 of its heat data and shift.
    """
    total = 0.0
    for heat, alpha in components:
        if heat.cross_dim != m - 1:
            raise ValidationError(
                f"component dimension {heat.cross_dim} disagrees with m-1 = {m - 1}"
            )
        if (m - 1) % 2 == 1:
            continue
        w0, w1 = w0_w1(heat, alpha)
        total += -_LN2 * w0 + w1
    return total


def b0_constant(components: Iterable[Tuple[HeatExpansion, float]]) -> float:
    """Determinant-difference constant b0 = - sum_i s_alpha_i."""
    return -math.fsum(s_alpha(heat, alpha) for heat, alpha in components)


def asym_constants(heat: HeatExpansion, alpha: float) -> AsymConstants:
    """All five constants for one boundary component."""
    w0, w1 = w0_w1(heat, alpha)
    return AsymConstants(
        s_alpha=s_alpha(heat, alpha),
        s_minus_alpha=s_alpha(heat, -alpha),
        w0=w0,
        w1=w1,
        a0=a0_constant([(heat, alpha)], heat.cross_dim + 1),
    )
