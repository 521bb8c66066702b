"""Interface (Dirichlet-to-Neumann type) operators in the product case.

For the cylinder cut at an interior circle {a} x Y, the relevant
operators act on boundary sections and have explicit eigenvalues over
the cross-section spectrum: the two-ended boundary operator, the single
Neumann-complement operator, the two one-sided cut operators, and the
interface-jump operator R at parameter 0 whose regularized determinant
enters the gluing identities.  The segment version of the two-ended
operator is a 2x2 matrix in closed form, exposed for asymptotic tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import SingularParameterError, ValidationError
from .special import harmonic
from .spectra import (
    CrossSection,
    Point,
    enumerate_spectrum,
    heat_coefficients,
    kernel_dim,
)
from .cylinder import SeriesResult, series_sum
from .zreg import (
    RegularizedDet,
    log_det_shifted,
    log_det_star,
    signed_log,
    zeta_point,
)

__all__ = [
    "InterfaceSpectrum",
    "qd_matrix_segment",
    "qd_det_segment",
    "qd0_det_segment",
    "spec_interface",
    "log_det_interface",
    "spec_RS0",
    "rs0_eigenvalue",
    "rs0_eigenvalue_resolvent_form",
    "log_det_star_RS0",
]

_LN2 = math.log(2.0)

BOTH_ENDS = "both_ends"
LEFT_NEUMANN_CUT = "left_neumann_cut"
CUT_LEFT = "cut_left"
CUT_RIGHT = "cut_right"


@dataclass(frozen=True)
class InterfaceSpectrum:
    """Truncated interface-operator spectrum with exact zero-mode count.

    ``entries`` exclude exact zero modes (counted in ``zero_modes``) and
    are sorted ascending.  ``geometry``/``length``/``alpha`` record which
    operator generated it; ``provenance`` is the human-readable tag.
    """

    entries: tuple
    zero_modes: int
    geometry: str
    length: float
    alpha: float
    provenance: str

    def eigenvalues(self) -> list:
        return [v for v, _ in self.entries]


# ----------------------------------------------------------------------------
# segment boundary operator (2x2)
# ----------------------------------------------------------------------------


def _safe_exp_ratio(z: complex) -> Tuple[complex, complex]:
    """(coth(z), 1/sinh(z)) computed through exp(-z), stable for Re z >= 0."""
    w = cmath.exp(-2.0 * z)
    denom = 1.0 - w
    if denom == 0:
        raise SingularParameterError("interface matrix singular at this parameter")
    return (1.0 + w) / denom, 2.0 * cmath.exp(-z) / denom


def qd_matrix_segment(lam: complex, alpha: float, length: float):
    """Boundary operator of the shifted segment Laplacian and its determinant.

    For Re(lam) >= 0, lam != 0 (principal square root), the operator on
    the two endpoint values is::

        [ sqrt(lam) coth(sqrt(lam) L) + alpha,  -sqrt(lam)/sinh(sqrt(lam) L) ]
        [ -sqrt(lam)/sinh(sqrt(lam) L),  sqrt(lam) coth(sqrt(lam) L) + alpha ]

    Returns ``(matrix, det)`` with the determinant evaluated in the
    overflow-safe closed form
    lam + alpha^2 + 2 alpha sqrt(lam) + 4 alpha sqrt(lam)/(e^(2 sqrt(lam) L) - 1).
    """
    if not (length > 0):
        raise ValidationError("segment length must be > 0")
    lam = complex(lam)
    if lam == 0:
        raise ValidationError(
            "lam = 0 is the degenerate limit; use qd0_det_segment for it"
        )
    if lam.real < 0 and abs(lam.imag) < 1e-300:
        raise ValidationError("the matrix is defined for Re(lam) >= 0")
    root = cmath.sqrt(lam)
    z = root * length
    coth, csch = _safe_exp_ratio(z)
    diag = root * coth + alpha
    off = -root * csch
    mat = np.array([[diag, off], [off, diag]], dtype=complex)
    return mat, qd_det_segment(lam, alpha, length)


def _cexpm1(z: complex) -> complex:
    """exp(z) - 1 without cancellation for small |z| (complex-safe)."""
    if abs(z) < 1e-4:
        # truncated Taylor series; relative error below 1e-20 at |z|=1e-4
        return z * (1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0 * (1.0 + z / 5.0))))
    return cmath.exp(z) - 1.0


def qd_det_segment(lam: complex, alpha: float, length: float) -> complex:
    """Closed-form determinant of the segment boundary operator."""
    lam = complex(lam)
    root = cmath.sqrt(lam)
    z = 2.0 * root * length
    if z.real > 700.0:
        corr = 4.0 * alpha * root * cmath.exp(-z)
    else:
        em = _cexpm1(z)
        if em == 0:
            raise SingularParameterError("determinant singular: exp(2 sqrt(lam) L) = 1")
        corr = 4.0 * alpha * root / em
    det = lam + alpha * alpha + 2.0 * alpha * root + corr
    if abs(det.imag) == 0.0:
        return complex(det.real, 0.0)
    return det


def qd0_det_segment(alpha: float, length: float) -> float:
    """lam -> 0 limit of the segment boundary determinant: 2 alpha/L + alpha^2."""
    if not (length > 0):
        raise ValidationError("segment length must be > 0")
    return 2.0 * alpha / length + alpha * alpha


# ----------------------------------------------------------------------------
# interface spectra over a general cross-section
# ----------------------------------------------------------------------------


def _both_ends_values(x: float, length: float, alpha: float):
    if x == 0.0:
        return (alpha, 2.0 / length + alpha)
    return (
        x + alpha - 2.0 * x / (math.exp(length * x) + 1.0),
        x + alpha + 2.0 * x / math.expm1(length * x),
    )


def _left_neumann_value(x: float, length: float):
    if x == 0.0:
        return 1.0 / length
    return x * (1.0 + 2.0 / math.expm1(2.0 * length * x))


def _cut_value(x: float, length: float, alpha: float):
    # one-sided operator with the complement held by a Neumann end
    if x == 0.0:
        return alpha
    return x + alpha - 2.0 * x / (math.exp(2.0 * length * x) + 1.0)


def spec_interface(
    cs: CrossSection,
    geometry: str,
    length: float,
    alpha: float = 0.0,
    cutoff: float = 100.0,
) -> InterfaceSpectrum:
    """Exact truncated spectrum of one interface operator.

    Geometries: ``both_ends`` (boundary operator of [0, L] x Y with the
    shift on both ends), ``left_neumann_cut`` (single-end operator with a
    Dirichlet complement), ``cut_left``/``cut_right`` (one-sided cut
    operators of a piece of length ``length``; ``cut_right`` flips the
    sign of the shift).  Multiplicities are inherited from the
    cross-section spectrum; exact zero modes are counted separately.
    """
    if not (length > 0):
        raise ValidationError("interface geometry needs a positive length")
    if geometry not in (BOTH_ENDS, LEFT_NEUMANN_CUT, CUT_LEFT, CUT_RIGHT):
        raise ValidationError(f"unknown interface geometry {geometry!r}")
    sign = -1.0 if geometry == CUT_RIGHT else 1.0
    out = []
    zero_modes = 0
    for e in enumerate_spectrum(cs, cutoff):
        x = math.sqrt(e.eigenvalue)
        if geometry == BOTH_ENDS:
            vals = _both_ends_values(x, length, alpha)
        elif geometry == LEFT_NEUMANN_CUT:
            vals = (_left_neumann_value(x, length),)
        else:
            vals = (_cut_value(x, length, sign * alpha),)
        for v in vals:
            if v == 0.0:
                zero_modes += e.multiplicity
            else:
                out.append((v, e.multiplicity))
    out.sort(key=lambda t: t[0])
    tag = f"{geometry}(L={length:g}, alpha={alpha:g})"
    return InterfaceSpectrum(
        entries=tuple(out),
        zero_modes=zero_modes,
        geometry=geometry,
        length=length,
        alpha=alpha,
        provenance=tag,
    )


def log_det_interface(
    spectrum: InterfaceSpectrum,
    reference: CrossSection,
    alpha: Optional[float] = None,
    variant: Optional[str] = None,
    tol: float = 1e-12,
    backend: str = "auto",
) -> RegularizedDet:
    """Regularized log-determinant of an interface operator.

    The eigenvalues grow like sqrt(mu), so the determinant is assembled
    as a regularized leading part (shifted first-order determinants of
    the cross-section) times an absolutely convergent correction series,
    never by naive regularization of the raw list.  ``alpha``/``variant``
    must match the spectrum's provenance when given.
    """
    if variant is not None and variant != spectrum.geometry:
        raise ValidationError(
            f"variant {variant!r} disagrees with spectrum geometry {spectrum.geometry!r}"
        )
    if alpha is not None and alpha != spectrum.alpha:
        raise ValidationError("alpha disagrees with the spectrum provenance")
    cs = reference
    a = spectrum.alpha
    L = spectrum.length
    q0 = kernel_dim(cs)
    geometry = spectrum.geometry

    if geometry == BOTH_ENDS:
        if a == 0.0:
            star = log_det_star(cs, backend=backend)
            logmod = q0 * math.log(2.0 / L) + star.log_modulus
            return RegularizedDet(logmod, 0, q0)
        shifted = log_det_shifted(cs, a, backend=backend)
        lm0, ph0 = signed_log(1.0 + 2.0 / (L * a))
        ser = series_sum(cs, L, "qd_correction", alpha=a, tol=tol)
        return RegularizedDet(
            2.0 * shifted.log_modulus + q0 * lm0 + ser.value,
            2 * shifted.phase_multiple + q0 * ph0 + ser.phase,
            0,
        )

    if geometry == LEFT_NEUMANN_CUT:
        if a != 0.0:
            raise ValidationError("the Neumann-complement operator carries no shift")
        star = log_det_star(cs, backend=backend)
        ser = series_sum(cs, L, "coth_correction", tol=tol)
        return RegularizedDet(
            -q0 * math.log(L) + 0.5 * star.log_modulus + ser.value, ser.phase, 0
        )

    # one-sided cut operators
    eff = a if geometry == CUT_LEFT else -a
    if eff == 0.0:
        star = log_det_star(cs, backend=backend)
        ser_m = series_sum(cs, L, "log1m_exp", tol=tol)
        ser_p = series_sum(cs, L, "log1p_exp", tol=tol)
        return RegularizedDet(
            0.5 * star.log_modulus + ser_m.value - ser_p.value,
            ser_m.phase - ser_p.phase,
            q0,
        )
    shifted = log_det_shifted(cs, eff, backend=backend)
    ser_r = series_sum(cs, L, "robin_end", alpha=eff, tol=tol)
    ser_p = series_sum(cs, L, "log1p_exp", tol=tol)
    return RegularizedDet(
        shifted.log_modulus + ser_r.value - ser_p.value,
        shifted.phase_multiple + ser_r.phase - ser_p.phase,
        0,
    )


# ----------------------------------------------------------------------------
# the interface-jump operator at parameter 0
# ----------------------------------------------------------------------------


def _check_rs0_admissible(cs: CrossSection, alpha: float):
    if alpha == 0.0:
        return
    lam = alpha * alpha * (1.0 + 1e-9) + 1.0
    for e in enumerate_spectrum(cs, lam):
        root = math.sqrt(e.eigenvalue)
        if abs(root - abs(alpha)) < 1e-14 * max(1.0, abs(alpha)):
            raise SingularParameterError(
                f"singular parameter: alpha = {alpha} collides with the sqrt-spectrum "
                f"(eigenvalue {e.eigenvalue})"
            )


def rs0_eigenvalue(mu: float, length: float, a: float, alpha: float) -> float:
    """Interface-jump eigenvalue over the cross-section mode mu > 0."""
    x = math.sqrt(mu)
    b = length - a
    if x == 0.0:
        return 0.0
    if x == abs(alpha):
        raise SingularParameterError("singular parameter at this mode")
    num = (2.0 * x / (mu - alpha * alpha)) * (-math.expm1(-2.0 * length * x))
    d1 = 1.0 - (x - alpha) / (x + alpha) * math.exp(-2.0 * a * x)
    d2 = 1.0 - (x + alpha) / (x - alpha) * math.exp(-2.0 * b * x)
    return num / (d1 * d2)


def rs0_eigenvalue_resolvent_form(mu: float, length: float, a: float, alpha: float) -> float:
    """Same eigenvalue through the sum of the two one-sided resolvents.

    Independent evaluation path: 1/q1 + 1/q2 with q1, q2 the one-sided
    cut-operator eigenvalues of the two pieces.
    """
    x = math.sqrt(mu)
    q1 = _cut_value(x, a, alpha)
    q2 = _cut_value(x, length - a, -alpha)
    if q1 == 0.0 or q2 == 0.0:
        raise SingularParameterError("one-sided operator singular at this mode")
    return 1.0 / q1 + 1.0 / q2


def spec_RS0(
    cs: CrossSection,
    length: float,
    a: float,
    alpha: float = 0.0,
    cutoff: float = 100.0,
) -> InterfaceSpectrum:
    """Truncated spectrum of the interface-jump operator at parameter 0.

    The zero cross-section modes are exact zero modes of the operator
    (the limit value vanishes); they are excluded from the entries and
    counted in ``zero_modes``.
    """
    if not (0 < a < length):
        raise ValidationError("the cut must satisfy 0 < a < L")
    _check_rs0_admissible(cs, alpha)
    out = []
    zero_modes = 0
    for e in enumerate_spectrum(cs, cutoff):
        if e.eigenvalue == 0.0:
            zero_modes += e.multiplicity
            continue
        out.append((rs0_eigenvalue(e.eigenvalue, length, a, alpha), e.multiplicity))
    out.sort(key=lambda t: t[0])
    tag = f"interface_jump(L={length:g}, a={a:g}, alpha={alpha:g})"
    return InterfaceSpectrum(
        entries=tuple(out),
        zero_modes=zero_modes,
        geometry="interface_jump",
        length=length,
        alpha=alpha,
        provenance=tag,
    )


def log_det_star_RS0(
    cs: CrossSection,
    length: float,
    a: float,
    alpha: float = 0.0,
    tol: float = 1e-12,
    backend: str = "auto",
) -> RegularizedDet:
    """ln Det* of the interface-jump operator at parameter 0.

    Assembled through the factorized form: the regularized determinant of
    2 sqrt(Delta)/(Delta - alpha^2) -- written with a ln2-weighted zeta
    value, the two shifted determinants, exact zero-mode phase
    bookkeeping and a finite heat-coefficient correction -- plus the
    convergent cut series.  The raw eigenvalue list has order -1 growth
    and is never regularized directly.
    """
    if not (0 < a < length):
        raise ValidationError("the cut must satisfy 0 < a < L")
    _check_rs0_admissible(cs, alpha)
    q0 = kernel_dim(cs)
    d = cs.dim
    star = log_det_star(cs, backend=backend)

    if alpha == 0.0:
        z0 = zeta_point(cs, 0.0, backend=backend).value
        ser = series_sum(cs, length, "neumann_pair", a=a, tol=tol)
        return RegularizedDet(
            _LN2 * z0 - 0.5 * star.log_modulus + ser.value, ser.phase, q0
        )

    heat = heat_coefficients(cs, order=d // 2)
    poly = 0.0
    corr = 0.0
    for k in range(1, d // 2 + 1):
        if d % 2 == 1:
            break  # half-integer-indexed coefficients vanish
        aj = heat.coeff(d // 2 - k)
        poly += 2.0 * aj * alpha ** (2 * k) / math.factorial(k)
        corr += (
            2.0
            * aj
            * alpha ** (2 * k)
            / math.factorial(k)
            * (harmonic(2 * k - 1) - harmonic(k - 1))
        )
    a_half = heat.coeff(d // 2) if d % 2 == 0 else 0.0
    zeta0 = (a_half - q0) + poly

    plus = log_det_shifted(cs, alpha, backend=backend)
    minus = log_det_shifted(cs, -alpha, backend=backend)
    # ln Det* of the factorized operator; -q0 ln(-alpha^2) removes the
    # paired zero-mode factors and contributes q0 pi-units of phase
    fact_logmod = (
        plus.log_modulus
        + minus.log_modulus
        - q0 * math.log(alpha * alpha)
        - 0.5 * star.log_modulus
        + corr
    )
    fact_phase = plus.phase_multiple + minus.phase_multiple - q0

    ser = series_sum(cs, length, "robin_pair", alpha=alpha, a=a, tol=tol)
    return RegularizedDet(
        _LN2 * zeta0 - fact_logmod + ser.value,
        -fact_phase + ser.phase,
        q0,
    )
