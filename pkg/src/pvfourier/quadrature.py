"""Core integration engine.

Three integration modes are provided:

* :func:`integrate_finite` -- adaptive quadrature on a bounded interval
  using an embedded 7/15-point Gauss-Kronrod pair with bisection of the
  worst subinterval.
* :func:`integrate_oscillatory` -- semi-infinite integrals of
  ``amplitude(t) * exp(i*omega*t)`` by partitioning the ray into
  half-period cells and accelerating the alternating cell sums.
* :func:`principal_value` -- symmetric principal-value integrals around a
  simple real pole, using the pairwise rewrite that removes the
  singularity analytically (no epsilon-extrapolation loop).

Integrands are vectorized callables: they receive a numpy array of
abscissae and must return an array of the same shape (real or complex
values are both fine).  All functions here are pure; nothing is shared
between calls, so they are safe to use from concurrent callers.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .acceleration import alternating_limit

__all__ = [
    "Tolerance",
    "QuadratureOutcome",
    "DivergenceSuspectedError",
    "integrate_finite",
    "integrate_oscillatory",
    "principal_value",
    "sinc_integral",
    "oscillation_edges",
]


class DivergenceSuspectedError(RuntimeError):
    """Raised when oscillatory cell magnitudes fail to decay."""


@dataclass(frozen=True)
class Tolerance:
    """Quadrature stopping control.

    ``absolute`` and ``relative`` must both be positive; convergence is
    declared when the accumulated error estimate drops below
    ``max(absolute, relative * |value|)``.  ``max_subdivisions`` caps the
    number of interval bisections (and the number of oscillatory cells).
    """

    absolute: float = 1e-10
    relative: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.absolute > 0):
            raise ValueError("absolute tolerance must be > 0")
        if not (self.relative > 0):
            raise ValueError("relative tolerance must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")

    def threshold(self, magnitude: float) -> float:
        return max(self.absolute, self.relative * magnitude)


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class QuadratureOutcome:
    """Result record: complex value, error estimate and bookkeeping."""

    value: complex
    error_estimate: float
    evaluations: int
    converged: bool
    warning: str | None = None

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be nonnegative")
        if self.evaluations < 0:
            raise ValueError("evaluations must be nonnegative")


# 7/15 Gauss-Kronrod nodes and weights on [-1, 1], ascending order.
# The 7-point Gauss rule is embedded at every second node; _W_GAUSS carries
# zeros elsewhere so both rules share one integrand evaluation.
_NODES_HALF = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144838258730,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.0,
    ]
)
_WK_HALF = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG_HALF = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

_NODES = np.concatenate([-_NODES_HALF[:-1], _NODES_HALF[::-1]])
_W_KRONROD = np.concatenate([_WK_HALF[:-1], _WK_HALF[::-1]])
_W_GAUSS = np.zeros(15)
_W_GAUSS[1:14:2] = np.concatenate([_WG_HALF[:-1], _WG_HALF[::-1]])
_POINTS_PER_PANEL = 15


def _evaluate_panels(integrand, edges: np.ndarray):
    """Evaluate the Gauss-Kronrod pair on every panel in one integrand call.

    Returns per-panel Kronrod values, per-panel |K15 - G7| error estimates
    and the evaluation count.
    """
    edges = np.asarray(edges, dtype=float)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halfs = 0.5 * (edges[1:] - edges[:-1])
    nodes = mids[:, None] + halfs[:, None] * _NODES[None, :]
    raw = np.asarray(integrand(nodes.ravel()))
    if raw.shape != nodes.ravel().shape:
        raise ValueError(
            "integrand must return an array matching its input shape"
        )
    if np.any(np.isnan(raw)):
        raise ValueError("integrand returned NaN")
    samples = raw.reshape(nodes.shape)
    kron = halfs * (samples @ _W_KRONROD)
    gauss = halfs * (samples @ _W_GAUSS)
    errors = np.abs(kron - gauss)
    return kron, errors, nodes.size


def oscillation_edges(a: float, b: float, wavelength: float,
                      extra: Iterable[float] = ()) -> np.ndarray:
    """Interior breakpoints splitting [a, b] into panels of at most
    ``wavelength`` width, merged with any ``extra`` points inside (a, b)."""
    if not wavelength > 0:
        raise ValueError("wavelength must be positive")
    n = int(math.ceil((b - a) / wavelength))
    n = min(max(n, 1), 400_000)
    pts = np.linspace(a, b, n + 1)[1:-1]
    extra = [p for p in extra if a < p < b]
    if extra:
        pts = np.unique(np.concatenate([pts, np.asarray(extra, dtype=float)]))
    return pts


def integrate_finite(
    integrand: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float],
    tol: Tolerance = DEFAULT_TOLERANCE,
    breakpoints: Sequence[float] = (),
) -> QuadratureOutcome:
    """Adaptively integrate a bounded function over a finite interval.

    Parameters
    ----------
    integrand : vectorized callable, real or complex valued.
    interval : pair (a, b) with a < b, both finite.
    tol : Tolerance record; defaults to (1e-10, 1e-10, 2000).
    breakpoints : optional points inside (a, b) where panels must split,
        e.g. kinks of the integrand or oscillation cell edges.

    The worst-error subinterval is bisected until the summed panel error
    meets the tolerance or the subdivision budget runs out; in the latter
    case the outcome is returned with ``converged=False``.
    """
    a, b = float(interval[0]), float(interval[1])
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate_finite requires finite endpoints")
    if not a < b:
        raise ValueError(f"empty or reversed interval [{a}, {b}]")

    inner = sorted({float(p) for p in breakpoints if a < p < b})
    edges = np.array([a, *inner, b], dtype=float)
    values, errors, evaluations = _evaluate_panels(integrand, edges)

    heap: list[tuple[float, int, float, float, complex, float]] = []
    counter = 0
    for i in range(len(values)):
        heapq.heappush(
            heap, (-errors[i], counter, edges[i], edges[i + 1], values[i], errors[i])
        )
        counter += 1

    total = complex(np.sum(values))
    total_err = float(np.sum(errors))
    splits = 0

    while total_err > tol.threshold(abs(total)) and splits < tol.max_subdivisions:
        _, _, lo, hi, val, err = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # interval at floating point resolution; its error is irreducible
            heapq.heappush(heap, (0.0, counter, lo, hi, val, err))
            counter += 1
            if all(item[0] == 0.0 for item in heap):
                break
            continue
        sub_vals, sub_errs, n_eval = _evaluate_panels(integrand, np.array([lo, mid, hi]))
        evaluations += n_eval
        total += complex(sub_vals[0] + sub_vals[1] - val)
        total_err += float(sub_errs[0] + sub_errs[1] - err)
        for j in range(2):
            heapq.heappush(
                heap,
                (
                    -sub_errs[j],
                    counter,
                    (lo, mid)[j],
                    (mid, hi)[j],
                    sub_vals[j],
                    sub_errs[j],
                ),
            )
            counter += 1
        splits += 1

    total_err = abs(total_err)
    return QuadratureOutcome(
        value=total,
        error_estimate=total_err,
        evaluations=evaluations,
        converged=total_err <= tol.threshold(abs(total)),
    )


_CELL_BATCH = 16
_DECAY_WINDOW = 8


def integrate_oscillatory(
    amplitude: Callable[[np.ndarray], np.ndarray],
    omega: float,
    interval: tuple[float, float],
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> QuadratureOutcome:
    """Integrate ``amplitude(t) * exp(i*omega*t)`` over a half-infinite ray.

    The ray is split into cells of width pi/|omega| (consecutive cells carry
    opposite phase), each cell is integrated with the Gauss-Kronrod pair,
    and the oscillating partial sums are accelerated by iterated averaging.
    Convergence requires the accelerated tail estimate to drop below
    ``tol.absolute``.

    The amplitude must be eventually monotone-decaying in magnitude; if the
    cell magnitudes fail to decay a :class:`DivergenceSuspectedError` is
    raised.
    """
    if omega == 0 or not math.isfinite(omega):
        raise ValueError("omega must be finite and nonzero")
    a, b = interval
    if math.isinf(b) and math.isfinite(a):
        start, amp, om = float(a), amplitude, float(omega)
    elif math.isinf(a) and math.isfinite(b):
        # reflect (-inf, b] onto [-b, inf) with t -> -t
        bb = float(b)
        amp = lambda t, _amp=amplitude: _amp(-t)
        om = -float(omega)
        start = -bb
    else:
        raise ValueError("interval must be half-infinite: [a, inf) or (-inf, b]")

    h = math.pi / abs(om)
    integrand = lambda t: np.asarray(amp(t)) * np.exp(1j * om * t)

    partials: list[complex] = []
    cell_mags: list[float] = []
    running = 0.0 + 0.0j
    quad_err = 0.0
    evaluations = 0
    prev_estimate: complex | None = None
    estimate = 0.0 + 0.0j
    tail = math.inf
    max_cells = max(64, tol.max_subdivisions)

    k = 0
    while k < max_cells:
        batch = min(_CELL_BATCH, max_cells - k)
        edges = start + h * np.arange(k, k + batch + 1)
        vals, errs, n_eval = _evaluate_panels(integrand, edges)
        evaluations += n_eval
        for v, e in zip(vals, errs):
            running += complex(v)
            quad_err += float(e)
            partials.append(running)
            cell_mags.append(abs(complex(v)))
        k += batch

        if len(cell_mags) >= 2 * _DECAY_WINDOW:
            recent = cell_mags[-_DECAY_WINDOW:]
            grows = all(
                recent[i + 1] >= recent[i] * (1.0 - 1e-12)
                for i in range(len(recent) - 1)
            )
            if grows and recent[-1] > tol.absolute:
                raise DivergenceSuspectedError(
                    "oscillatory cell magnitudes are not decaying; "
                    "the integral is suspected divergent"
                )

        estimate, level_tail = alternating_limit(partials)
        if prev_estimate is not None:
            tail = abs(estimate - prev_estimate) + level_tail
            if tail + quad_err <= tol.absolute:
                return QuadratureOutcome(
                    value=estimate,
                    error_estimate=tail + quad_err,
                    evaluations=evaluations,
                    converged=True,
                )
        prev_estimate = estimate

    return QuadratureOutcome(
        value=estimate,
        error_estimate=(0.0 if math.isinf(tail) else tail) + quad_err,
        evaluations=evaluations,
        converged=False,
    )


def principal_value(
    regular_factor: Callable[[np.ndarray], np.ndarray],
    pole: float,
    interval: tuple[float, float],
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> QuadratureOutcome:
    """Principal value of ``regular_factor(x) / (x - pole)`` over [a, b].

    The symmetric window around the pole is rewritten as
    ``(phi(c+u) - phi(c-u)) / u`` on (0, h], which is regular whenever phi
    is continuous at the pole, and the leftover one-sided piece is handled
    as an ordinary integral.  A warning flag is set when a large one-sided
    difference suggests phi is discontinuous at the pole.
    """
    a, b = float(interval[0]), float(interval[1])
    c = float(pole)
    if not a < c < b:
        raise ValueError(f"pole {c} must lie strictly inside ({a}, {b})")

    h = min(c - a, b - c)
    phi = regular_factor

    def symmetric(u):
        return (phi(c + u) - phi(c - u)) / u

    sym = integrate_finite(symmetric, (0.0, h), tol)
    value = sym.value
    err = sym.error_estimate
    evals = sym.evaluations
    converged = sym.converged

    eps = 1e-14 * (abs(a) + abs(b) + abs(c) + 1.0)
    if b - c > h + eps:
        rest = integrate_finite(lambda x: phi(x) / (x - c), (c + h, b), tol)
    elif c - a > h + eps:
        rest = integrate_finite(lambda x: phi(x) / (x - c), (a, c - h), tol)
    else:
        rest = None
    if rest is not None:
        value += rest.value
        err += rest.error_estimate
        evals += rest.evaluations
        converged = converged and rest.converged

    warning = None
    delta = max(h * 1e-7, 1e-300)
    probe = np.array([c + delta, c - delta, c + h, c - h])
    vals = np.asarray(phi(probe))
    scale = max(float(np.max(np.abs(vals))), 1.0)
    if abs(complex(vals[0]) - complex(vals[1])) > 1e-3 * scale:
        warning = "regular factor looks discontinuous at the pole"

    return QuadratureOutcome(
        value=value,
        error_estimate=err,
        evaluations=evals,
        converged=converged,
        warning=warning,
    )


def sinc_integral(radius: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Integral of sin(x)/x from 0 to ``radius`` (``math.inf`` allowed).

    The integrand is evaluated through its smooth extension (value 1 at 0).
    For an infinite radius the tail beyond pi is handled by the oscillatory
    engine, producing the limit pi/2.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    sinc = lambda x: np.sinc(x / np.pi)
    if math.isinf(radius):
        head = integrate_finite(sinc, (0.0, math.pi), tol)
        tail = integrate_oscillatory(lambda t: 1.0 / t, 1.0, (math.pi, math.inf), tol)
        return float(head.value.real + tail.value.imag)
    cuts = oscillation_edges(0.0, radius, math.pi) if radius > math.pi else ()
    out = integrate_finite(sinc, (0.0, radius), tol, breakpoints=cuts)
    return float(out.value.real)
