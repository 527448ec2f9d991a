"""Inversion from an interval restriction only.

The inversion value at an interior point of [x1, x2] can be computed from
the restriction of f to that interval alone: whatever f does outside is
immaterial.  This module evaluates the restricted double integral, the
interval form of the first-order reconstruction (which picks up a boundary
term), and the closed-form monomial family whose truncated inversion
splits into boundary terms that vanish like 1/R plus a principal term
driven by the sine integral.

Endpoint evaluation (x equal to x1 or x2) is deliberately excluded; the
identity is only claimed strictly inside the interval.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .inversion import (
    DEFAULT_LADDER,
    InversionReport,
    TruncationLadder,
    ladder_partials,
)
from .acceleration import ladder_accelerate
from .perron import ComplexParameter
from .quadrature import (
    DEFAULT_TOLERANCE,
    Tolerance,
    integrate_finite,
    oscillation_edges,
    sinc_integral,
)
from .testfns import TestFunction

__all__ = [
    "localize_invert",
    "ode_reconstruct_interval",
    "monomial_example",
]


class _RestrictedTransform:
    """Transform of f restricted to [x1, x2], memoized per frequency."""

    def __init__(self, f: TestFunction, x1: float, x2: float, tol: Tolerance):
        self._f = f
        self._x1 = x1
        self._x2 = x2
        self._tol = tol
        self._kinks = tuple(k for k in f.kinks if x1 < k < x2)
        self._cache: dict[float, complex] = {}

    def _one(self, s: float) -> complex:
        integrand = lambda t: self._f.evaluate(t) * np.exp(-1j * s * t)
        cuts = oscillation_edges(
            self._x1, self._x2, math.pi / max(abs(s), 1.0), extra=self._kinks
        )
        return integrate_finite(
            integrand, (self._x1, self._x2), self._tol, breakpoints=cuts
        ).value

    def __call__(self, s_array) -> np.ndarray:
        flat = np.asarray(s_array, dtype=float).ravel()
        if flat.size > 64:
            from .transform import batch_compact_transform

            vals = batch_compact_transform(
                self._f.evaluate, (self._x1, self._x2), self._kinks,
                flat, self._tol,
            )
            return vals.reshape(np.shape(s_array))
        out = np.empty(flat.shape, dtype=complex)
        for i, s in enumerate(flat):
            key = float(s)
            if key not in self._cache:
                self._cache[key] = self._one(key)
            out[i] = self._cache[key]
        return out.reshape(np.shape(s_array))


def localize_invert(
    f: TestFunction,
    x1: float,
    x2: float,
    x: float,
    ladder: TruncationLadder = DEFAULT_LADDER,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> InversionReport:
    """Invert at an interior point using only f restricted to [x1, x2].

    The reference value is f(x); f must be absolutely continuous on the
    interval (flags are not checked here since restriction to a compact
    interval is what makes the hypotheses local).
    """
    x1, x2, x = float(x1), float(x2), float(x)
    if not x1 < x < x2:
        raise ValueError("the evaluation point must lie strictly inside (x1, x2)")
    fhat = _RestrictedTransform(f, x1, x2, tol)
    partials, converged = ladder_partials(fhat, x, ladder.radii, tol)
    accelerated = ladder_accelerate([v for _, v in partials], ladder.acceleration)
    reference = f.value_at(x)
    return InversionReport(
        x=x,
        partials=tuple(partials),
        accelerated=accelerated,
        reference=reference,
        abs_error=abs(accelerated - reference),
        converged=converged,
    )


def ode_reconstruct_interval(
    f: TestFunction,
    w: ComplexParameter,
    x1: float,
    x: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> complex:
    """Interval reconstruction with the boundary term at x1.

    Evaluates e^{iwx} * integral_{x1}^{x} e^{-iwt} (f' - i*w*f)(t) dt
    + f(x1) * e^{iw(x-x1)}, which equals f(x) on [x1, x2] for absolutely
    continuous f.
    """
    if f.deriv is None:
        raise ValueError(f"{f.id} has no derivative evaluator")
    x1, x = float(x1), float(x)
    if x < x1:
        raise ValueError("x must not precede x1")
    wc = w.value
    boundary = f.value_at(x1) * cmath.exp(1j * wc * (x - x1))
    if x == x1:
        return boundary

    def integrand(t):
        g = f.deriv(t) - 1j * wc * f.evaluate(t)
        return np.exp(-1j * wc * t) * g

    out = integrate_finite(integrand, (x1, x), tol, breakpoints=f.kinks)
    return cmath.exp(1j * wc * x) * out.value + boundary


def _difference_kernel_derivs(s: float, order: int, x1: float, x2: float) -> complex:
    """Derivatives of (e^{-i*s*x2} - e^{-i*s*x1}) / s by the product rule."""
    total = 0.0 + 0.0j
    for j in range(order + 1):
        numer = (-1j * x2) ** j * cmath.exp(-1j * s * x2) - (
            -1j * x1
        ) ** j * cmath.exp(-1j * s * x1)
        total += (
            math.comb(order, j)
            * numer
            * (-1.0) ** (order - j)
            * math.factorial(order - j)
            / s ** (order - j + 1)
        )
    return total


def monomial_example(
    n: int,
    x: float,
    x1: float,
    x2: float,
    R: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> tuple[complex, complex]:
    """Truncated inversion of t**n on [x1, x2], split after n integrations
    by parts.

    Returns ``(boundary_terms, principal_term)``: the boundary sum decays
    like 1/R while the principal term tends to 2*pi*x**n.  The principal
    term reduces exactly to sine integrals,
    i^{n+1} * (-i*x)^n * (-2i) * (Si((x2-x)R) + Si((x-x1)R)).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not x1 < x < x2:
        raise ValueError("the evaluation point must lie strictly inside (x1, x2)")
    if not R > 0:
        raise ValueError("R must be positive")

    prefactor = 1j ** (n + 1)
    boundary = 0.0 + 0.0j
    for k in range(1, n + 1):
        bracket = cmath.exp(1j * x * R) * _difference_kernel_derivs(
            R, n - k, x1, x2
        ) - cmath.exp(-1j * x * R) * _difference_kernel_derivs(-R, n - k, x1, x2)
        boundary += (-1j * x) ** (k - 1) * bracket
    boundary *= prefactor

    si_sum = sinc_integral((x2 - x) * R, tol) + sinc_integral((x - x1) * R, tol)
    principal = prefactor * (-1j * x) ** n * (-2j) * si_sum
    return boundary, principal
