"""Plane inversion by iterated one-dimensional principal-value limits.

The double transform is inverted with the inner truncation limit taken
first: for each outer frequency the inner ladder is accelerated, then the
outer ladder is accelerated in turn.  A flag swaps the roles of the two
variables to exercise the interchanged order.

Sign note: composing two contour kernels multiplies two factors of
1/(2*pi*i), so the four-fold kernel representation carries the prefactor
(1/(2*pi*i))**2 = -1/(4*pi**2); the leading minus is genuine and cancels
against i**2 from the two kernel numerators.  The iterated-transform route
used here needs only the positive 1/(2*pi)**2 normalization.

The plane reconstruction identity rebuilds f from the second-order forcing
g = f_xy - i*w*(f_x + f_y) - w**2*f as an iterated corner integral.  The
rectangle increment F(x1,y1) - F(x2,y1) - F(x1,y2) + F(x2,y2) is exposed
as a property surface (additivity over partitions, vanishing on additively
separable functions); no decision procedure for plane absolute continuity
is attempted, since its quantifier over all finite disjoint rectangle
families is not numerically decidable.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .acceleration import ladder_accelerate
from .inversion import InversionReport, TruncationLadder
from .perron import ComplexParameter
from .quadrature import (
    DEFAULT_TOLERANCE,
    QuadratureOutcome,
    Tolerance,
    integrate_finite,
    oscillation_edges,
)
from .testfns import TestFunction2D

__all__ = [
    "fourier2d",
    "invert2d_partial",
    "invert2d_at",
    "pde_reconstruct2d",
    "mixed_partial_check",
    "rectangle_increment",
    "RectangleIncrement",
]


def fourier2d(
    f: TestFunction2D,
    s: float,
    t: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
    swap_order: bool = False,
) -> QuadratureOutcome:
    """Iterated transform integral: inner in the second variable, outer in
    the first (swapped when ``swap_order`` is set)."""
    if not f.f_l1:
        raise ValueError(f"{f.id} is not flagged integrable")
    s, t = float(s), float(t)
    tx, ty = f.trunc
    inner_tol = Tolerance(tol.absolute / 10.0, tol.relative, tol.max_subdivisions)

    if swap_order:
        ev = lambda u, v: f.evaluate(v, u)
        s, t = t, s
        tx, ty = ty, tx
        kinks_inner: tuple[float, ...] = ()
        kinks_outer = f.y_kinks
    else:
        ev = f.evaluate
        kinks_inner = f.y_kinks
        kinks_outer = ()

    inner_cuts = oscillation_edges(
        -ty, ty, math.pi / max(abs(t), 1.0), extra=kinks_inner
    )
    state = {"evals": 0, "converged": True}

    def inner(u: float) -> complex:
        out = integrate_finite(
            lambda v: ev(u, v) * np.exp(-1j * t * v),
            (-ty, ty),
            inner_tol,
            breakpoints=inner_cuts,
        )
        state["evals"] += out.evaluations
        state["converged"] &= out.converged
        return out.value

    def outer_integrand(u_array):
        flat = np.asarray(u_array, dtype=float).ravel()
        vals = np.array([inner(u) for u in flat], dtype=complex)
        return (vals * np.exp(-1j * s * flat)).reshape(np.shape(u_array))

    outer_cuts = oscillation_edges(
        -tx, tx, math.pi / max(abs(s), 1.0), extra=kinks_outer
    )
    outer = integrate_finite(outer_integrand, (-tx, tx), tol, breakpoints=outer_cuts)
    return QuadratureOutcome(
        value=outer.value,
        error_estimate=outer.error_estimate,
        evaluations=outer.evaluations + state["evals"],
        converged=outer.converged and state["converged"],
    )


class _CachedTransform2D:
    """Numerical double transform memoized per frequency pair."""

    def __init__(self, f: TestFunction2D, tol: Tolerance):
        self._f = f
        self._tol = tol
        self._cache: dict[tuple[float, float], complex] = {}

    def __call__(self, s, t) -> np.ndarray:
        s_arr, t_arr = np.broadcast_arrays(
            np.asarray(s, dtype=float), np.asarray(t, dtype=float)
        )
        out = np.empty(s_arr.shape, dtype=complex)
        for idx in np.ndindex(s_arr.shape):
            key = (float(s_arr[idx]), float(t_arr[idx]))
            if key not in self._cache:
                self._cache[key] = fourier2d(self._f, *key, self._tol).value
            out[idx] = self._cache[key]
        return out


def _transform2d(f: TestFunction2D, tol: Tolerance):
    if f.transform2d is not None:
        return lambda s, t: np.asarray(f.transform2d(s, t), dtype=complex)
    return _CachedTransform2D(f, tol)


def invert2d_partial(
    f: TestFunction2D,
    x: float,
    y: float,
    R1: float,
    R2: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> complex:
    """One raw rectangle partial of the plane inversion at radii (R1, R2).

    Exposed for the separability property surface: for product functions
    the rectangle partial factors into the two one-dimensional partials.
    """
    fhat = _transform2d(f, tol)
    x, y = float(x), float(y)
    inner_wavelength = math.pi / max(abs(y), 1.0)
    inner_cuts = oscillation_edges(-R2, R2, inner_wavelength)

    def inner(s: float) -> complex:
        out = integrate_finite(
            lambda tt: fhat(s, tt) * np.exp(1j * y * tt),
            (-R2, R2),
            tol,
            breakpoints=inner_cuts,
        )
        return out.value / (2.0 * math.pi)

    def outer_integrand(s_array):
        flat = np.asarray(s_array, dtype=float).ravel()
        vals = np.array([inner(s) for s in flat], dtype=complex)
        return (vals * np.exp(1j * x * flat)).reshape(np.shape(s_array))

    outer_cuts = oscillation_edges(-R1, R1, math.pi / max(abs(x), 1.0))
    outer = integrate_finite(outer_integrand, (-R1, R1), tol, breakpoints=outer_cuts)
    return outer.value / (2.0 * math.pi)


def invert2d_at(
    f: TestFunction2D,
    x: float,
    y: float,
    ladder1: TruncationLadder,
    ladder2: TruncationLadder,
    tol: Tolerance = DEFAULT_TOLERANCE,
    swap_order: bool = False,
) -> InversionReport:
    """Plane inversion with the inner truncation limit accelerated first.

    For each outer frequency node the inner ladder over the second variable
    is evaluated band by band and accelerated; the resulting function of
    the outer frequency is then integrated over the outer ladder, whose
    partials are accelerated in turn.  ``swap_order`` interchanges the two
    variables (and the two ladders).
    """
    if not (f.f_l1 and f.fx_l1 and f.fy_l1 and f.fxy_l1):
        raise ValueError(f"{f.id} does not satisfy the plane inversion hypotheses")
    x, y = float(x), float(y)
    fhat = _transform2d(f, tol)
    if swap_order:
        fhat_ordered = lambda s, t: fhat(t, s)
        x, y = y, x
        ladder1, ladder2 = ladder2, ladder1
    else:
        fhat_ordered = fhat

    inner_radii = ladder2.radii
    inner_wavelength = math.pi / max(abs(y), 1.0)
    state = {"converged": True}

    def inner_accelerated(s: float) -> complex:
        partials = []
        running = 0.0 + 0.0j
        prev = 0.0
        for R2 in inner_radii:
            bands = (
                [(-R2, R2)]
                if prev == 0.0
                else [(prev, R2), (-R2, -prev)]
            )
            for lo, hi in bands:
                out = integrate_finite(
                    lambda tt: fhat_ordered(s, tt) * np.exp(1j * y * tt),
                    (lo, hi),
                    tol,
                    breakpoints=oscillation_edges(lo, hi, inner_wavelength),
                )
                running += out.value
                state["converged"] &= out.converged
            partials.append(running / (2.0 * math.pi))
            prev = R2
        return ladder_accelerate(partials, ladder2.acceleration)

    cache: dict[float, complex] = {}

    def outer_integrand(s_array):
        flat = np.asarray(s_array, dtype=float).ravel()
        vals = np.empty(flat.shape, dtype=complex)
        for i, s in enumerate(flat):
            key = float(s)
            if key not in cache:
                cache[key] = inner_accelerated(key)
            vals[i] = cache[key]
        return (vals * np.exp(1j * x * flat)).reshape(np.shape(s_array))

    outer_wavelength = math.pi / max(abs(x), 1.0)
    partials: list[tuple[float, complex]] = []
    running = 0.0 + 0.0j
    prev = 0.0
    for R1 in ladder1.radii:
        bands = [(-R1, R1)] if prev == 0.0 else [(prev, R1), (-R1, -prev)]
        for lo, hi in bands:
            out = integrate_finite(
                outer_integrand,
                (lo, hi),
                tol,
                breakpoints=oscillation_edges(lo, hi, outer_wavelength),
            )
            running += out.value
            state["converged"] &= out.converged
        partials.append((R1, running / (2.0 * math.pi)))
        prev = R1

    accelerated = ladder_accelerate([v for _, v in partials], ladder1.acceleration)
    reference = f.value_at(*( (y, x) if swap_order else (x, y) ))
    return InversionReport(
        x=(y, x) if swap_order else (x, y),
        partials=tuple(partials),
        accelerated=accelerated,
        reference=reference,
        abs_error=abs(accelerated - reference),
        converged=state["converged"],
    )


def pde_reconstruct2d(
    f: TestFunction2D,
    w: ComplexParameter,
    x: float,
    y: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> complex:
    """Rebuild f(x, y) from g = f_xy - i*w*(f_x + f_y) - w**2 * f.

    Evaluates e^{iw(x+y)} * iterated corner integral of e^{-iw(s+t)} g(s,t)
    over (-inf, x] x (-inf, y]; equality with f(x, y) holds for every
    shift with positive imaginary part.
    """
    x, y = float(x), float(y)
    wc = w.value
    tx, ty = f.trunc
    lo_x = min(-tx, x - 1.0)
    lo_y = min(-ty, y - 1.0)

    def g(s, t):
        return (
            f.fxy(s, t)
            - 1j * wc * (f.fx(s, t) + f.fy(s, t))
            - wc * wc * f.evaluate(s, t)
        )

    y_cuts = tuple(k for k in f.y_kinks if lo_y < k < y)

    def inner(s: float) -> complex:
        out = integrate_finite(
            lambda t: np.exp(-1j * wc * t) * g(s, t),
            (lo_y, y),
            tol,
            breakpoints=y_cuts,
        )
        return out.value

    def outer_integrand(s_array):
        flat = np.asarray(s_array, dtype=float).ravel()
        vals = np.array([inner(s) for s in flat], dtype=complex)
        return (np.exp(-1j * wc * flat) * vals).reshape(np.shape(s_array))

    outer = integrate_finite(outer_integrand, (lo_x, x), tol)
    return np.exp(1j * wc * (x + y)) * outer.value


def mixed_partial_check(
    f: TestFunction2D,
    grid,
    h: float = 1e-3,
) -> float:
    """Largest gap between the two mixed central differences on a grid.

    Differentiates the stored first partials: d/dy of f_x against d/dx of
    f_y, both by symmetric differences of step ``h``.  For twice
    continuously differentiable entries the gap is O(h**2).
    """
    if not h > 0:
        raise ValueError("step must be positive")
    worst = 0.0
    for (px, py) in grid:
        px, py = float(px), float(py)
        fxy = (f.fx(px, py + h) - f.fx(px, py - h)) / (2.0 * h)
        fyx = (f.fy(px + h, py) - f.fy(px - h, py)) / (2.0 * h)
        worst = max(worst, abs(float(fxy) - float(fyx)))
    return worst


class RectangleIncrement(NamedTuple):
    value: float
    degenerate: bool


def rectangle_increment(
    F: TestFunction2D | Callable[[float, float], float],
    x1: float,
    y1: float,
    x2: float,
    y2: float,
) -> RectangleIncrement:
    """Corner combination F(x1,y1) - F(x2,y1) - F(x1,y2) + F(x2,y2).

    Degenerate rectangles (zero width or height) return 0 with the
    ``degenerate`` flag set; reversed corners are an error.
    """
    if x2 < x1 or y2 < y1:
        raise ValueError("rectangle corners must satisfy x1 <= x2 and y1 <= y2")
    ev = F.value_at if isinstance(F, TestFunction2D) else lambda a, b: float(F(a, b))
    if x1 == x2 or y1 == y2:
        return RectangleIncrement(0.0, True)
    value = ev(x1, y1) - ev(x2, y1) - ev(x1, y2) + ev(x2, y2)
    return RectangleIncrement(float(value), False)
