"""Contour-integral representation of the Heaviside step function.

For a complex shift w in the upper half plane, the truncated line integral

    (1 / 2*pi*i) * integral_{-R}^{R} exp(i*p*x) / (x - w) dx

tends to exp(i*p*w) * H(p) as R grows, where H is the Heaviside step
function with H(0) = 1/2 honored exactly.  This module evaluates the
truncated kernel numerically, the analytic semicircle truncation bound that
controls |kernel - limit|, and the exact log/arctan closed form of the
p = 0 case (which exists only as a symmetric principal value).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .quadrature import (
    DEFAULT_TOLERANCE,
    QuadratureOutcome,
    Tolerance,
    integrate_finite,
    oscillation_edges,
)

__all__ = [
    "ComplexParameter",
    "HeavisideValue",
    "DEFAULT_SHIFT",
    "heaviside_step",
    "heaviside_reference",
    "heaviside_kernel",
    "semicircle_bound",
    "pv_zero_closed_form",
]


@dataclass(frozen=True)
class ComplexParameter:
    """Shift w = xi + i*eta with eta > 0 (upper half plane)."""

    xi: float
    eta: float

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError("the shift must have positive imaginary part")

    @property
    def value(self) -> complex:
        return complex(self.xi, self.eta)

    @property
    def modulus(self) -> float:
        return abs(self.value)


# Default shift for downstream consistency checks; minimal modulus keeps
# the exponential weights tame.
DEFAULT_SHIFT = ComplexParameter(0.0, 1.0)


@dataclass(frozen=True)
class HeavisideValue:
    """A (p, value) pair with the step-function bounds baked in."""

    p: float
    value: complex

    def __post_init__(self):
        if self.p < 0 and self.value != 0:
            raise ValueError("step value must vanish for negative arguments")
        if self.p >= 0 and abs(self.value) > 1.0 + 1e-12:
            raise ValueError("step value must have modulus at most 1")


def heaviside_step(p: float) -> float:
    if p > 0:
        return 1.0
    if p < 0:
        return 0.0
    return 0.5


def heaviside_reference(p: float, w: ComplexParameter) -> complex:
    """Exact limit exp(i*p*w) * H(p) of the truncated kernel."""
    h = heaviside_step(p)
    if h == 0.0:
        return 0.0 + 0.0j
    return cmath.exp(1j * p * w.value) * h


def heaviside_kernel(
    p: float,
    w: ComplexParameter,
    R: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> QuadratureOutcome:
    """Truncated kernel (1/2*pi*i) * integral_{-R}^{R} e^{ipx}/(x-w) dx.

    Requires R > 2|w| so the truncation bound applies.  The path stays on
    the real axis; with eta > 0 there is no pole on it.  Panels are sized
    to at most half an oscillation so the adaptive rule stays efficient at
    large R.
    """
    if not R > 2.0 * w.modulus:
        raise ValueError("truncation radius must exceed twice the shift modulus")
    wc = w.value
    integrand = lambda x: np.exp(1j * p * x) / (x - wc)
    wavelength = math.pi / max(abs(p), 1.0)
    near_pole = [w.xi + k * w.eta for k in (-4.0, -1.0, 0.0, 1.0, 4.0)]
    cuts = oscillation_edges(-R, R, wavelength, extra=near_pole)
    raw = integrate_finite(integrand, (-R, R), tol, breakpoints=cuts)
    scale = 2.0 * math.pi
    return QuadratureOutcome(
        value=raw.value / (2j * math.pi),
        error_estimate=raw.error_estimate / scale,
        evaluations=raw.evaluations,
        converged=raw.converged,
    )


def semicircle_bound(p: float, R: float, w_modulus: float) -> float:
    """Analytic bound on the semicircle remainder |I_R| for p > 0.

    Evaluates (2 / (1 - |w|/R)) * (pi / (2*p*R)) * (1 - exp(-p*R)), which
    for R >= 2|w| never exceeds 2*pi/(p*R).  The same bound controls the
    p < 0 kernel magnitude through the reflected semicircle.
    """
    if not p > 0:
        raise ValueError("the bound is defined for positive frequency p")
    if w_modulus < 0:
        raise ValueError("w_modulus must be nonnegative")
    if not R > 2.0 * w_modulus:
        raise ValueError("truncation radius must exceed twice the shift modulus")
    return (2.0 / (1.0 - w_modulus / R)) * (math.pi / (2.0 * p * R)) * (-math.expm1(-p * R))


def pv_zero_closed_form(w: ComplexParameter, R: float) -> complex:
    """Exact value of integral_{-R}^{R} dx / ((x - xi) - i*eta).

    Real part: half the log of ((1-xi/R)^2+(eta/R)^2) over
    ((1+xi/R)^2+(eta/R)^2); imaginary part: arctan((R-xi)/eta) +
    arctan((R+xi)/eta).  The limit as R grows is i*pi, so the p = 0 kernel
    tends to 1/2.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    xi, eta = w.xi, w.eta
    num = (1.0 - xi / R) ** 2 + (eta / R) ** 2
    den = (1.0 + xi / R) ** 2 + (eta / R) ** 2
    real = 0.5 * math.log(num / den)
    imag = math.atan2(R - xi, eta) + math.atan2(R + xi, eta)
    return complex(real, imag)
