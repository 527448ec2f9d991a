"""A continuous integrable function whose inversion fails at the origin.

The function is a chain of sine pieces a_k * sin(n_k t) on the shrinking
intervals [pi/n_k, pi/n_{k-1}], with a_k = 1/k**2 and piece frequencies
n_k = N_1 * N_2 * ... * N_k for N_k = 2**(k**3).  Each piece vanishes at
its endpoints, so the chain is continuous and supported in [0, pi]; its
value at the origin is 0.  The total variation 2 * sum a_k (N_k - 1)
diverges, so the function is not absolutely continuous, and the truncated
inversion values J_k at the origin grow like k * log(2) / 2 instead of
tending to 0.

Desk-scale policy: the frequencies n_k explode double-exponentially
(n_3 = 2**36, n_4 = 2**100), so direct quadrature of J_k is feasible only
for small depth; the growth is certified through exact arithmetic for the
variation sums and an analytic lower bound whose only measured ingredient
is the bounded cosine-integral constant C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .quadrature import (
    DEFAULT_TOLERANCE,
    Tolerance,
    integrate_finite,
    integrate_oscillatory,
    oscillation_edges,
)
from .testfns import TestFunction

__all__ = [
    "CounterexampleSpec",
    "PrecisionError",
    "build",
    "eval_at_pi_multiple",
    "variation_partial_sum",
    "cross_term_constant",
    "jk_main_term",
    "jk_log_part",
    "jk_cross_bound",
    "jk_growth_certificate",
    "direct_jk",
    "jk_decomposition",
]

# beyond this product n_k * t the double argument of sin() has lost any
# sub-period resolution; callers needing boundary values should use the
# exact dyadic path instead
MAX_FLOAT_PHASE = 2.0**48


class PrecisionError(ValueError):
    """Floating-point evaluation requested beyond the resolvable phase."""


@dataclass(frozen=True)
class CounterexampleSpec:
    """Truncation depth plus the exact piece sequences."""

    depth: int = 3

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be at least 1")

    def a(self, k: int) -> Fraction:
        return Fraction(1, k * k)

    def N(self, k: int) -> int:
        return 1 << k**3

    def n(self, k: int) -> int:
        out = 1
        for j in range(1, k + 1):
            out *= self.N(j)
        return out

    def piece_interval(self, k: int) -> tuple[Fraction, Fraction]:
        """Piece k occupies [pi * lo, pi * hi] with exact rational lo, hi."""
        return Fraction(1, self.n(k)), Fraction(1, self.n(k - 1))


def eval_at_pi_multiple(spec: CounterexampleSpec, q: Fraction) -> float:
    """Exact-phase evaluation at t = q * pi for rational q.

    The phase n_k * q is reduced modulo 2 in exact rational arithmetic, so
    piece boundaries land on sin of exact integer multiples of pi and
    return exactly 0.
    """
    q = Fraction(q)
    if q <= 0 or q > 1:
        return 0.0
    for k in range(1, spec.depth + 1):
        lo, hi = spec.piece_interval(k)
        if lo <= q <= hi:
            phase = spec.n(k) * q  # exact rational multiple of pi
            reduced = phase - 2 * (phase // 2)
            if reduced.denominator == 1:
                return 0.0
            return float(spec.a(k)) * math.sin(math.pi * float(reduced))
    return 0.0


def build(spec: CounterexampleSpec) -> TestFunction:
    """The piecewise sine chain as a catalog-style test function.

    Floating-point evaluation raises :class:`PrecisionError` for points
    whose piece phase n_k * t exceeds the resolvable range; use
    :func:`eval_at_pi_multiple` for exact boundary work.
    """
    K = spec.depth
    bounds = [math.pi / spec.n(k) for k in range(K, -1, -1)]  # ascending
    freqs = [float(spec.n(k)) for k in range(K, 0, -1)]
    amps = [float(spec.a(k)) for k in range(K, 0, -1)]

    def evaluate(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for i in range(K):
            lo, hi = bounds[i], bounds[i + 1]
            mask = (t >= lo) & (t <= hi)
            if not np.any(mask):
                continue
            if freqs[i] * hi > MAX_FLOAT_PHASE:
                raise PrecisionError(
                    "piece phase exceeds float resolution; "
                    "use eval_at_pi_multiple for exact points"
                )
            out[mask] = amps[i] * np.sin(freqs[i] * t[mask])
        return out

    l1 = float(
        2 * sum(Fraction(spec.N(k) - 1, k * k * spec.n(k)) for k in range(1, K + 1))
    )
    return TestFunction(
        id=f"counterexample_depth{K}",
        evaluate=evaluate,
        deriv=None,
        transform=None,
        support=(bounds[0], math.pi),
        is_abs_cont=False,
        f_in_L1=True,
        fprime_in_L1=False,
        l1_norm=l1,
        sup_norm=1.0,
        kinks=tuple(bounds),
    )


def variation_partial_sum(K: int) -> Fraction:
    """Exact partial sum 2 * sum_{k<=K} (N_k - 1) / k**2 of the variation."""
    if K < 1:
        raise ValueError("K must be at least 1")
    spec = CounterexampleSpec(K)
    return 2 * sum(Fraction(spec.N(k) - 1, k * k) for k in range(1, K + 1))


def _cos_over_t_tail(start: float, tol: Tolerance) -> tuple[float, float]:
    """Conditionally convergent integral of cos(t)/t from ``start`` to infinity."""
    out = integrate_oscillatory(lambda t: 1.0 / t, 1.0, (start, math.inf), tol)
    return float(out.value.real), out.error_estimate


def cross_term_constant(tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[float, float]:
    """Largest swing of integral_x^y cos(t)/t dt over pi/2 <= x < y.

    The antiderivative G(x) = integral from pi/2 has extrema exactly at the
    cosine zeros (odd multiples of pi/2); the swing is max G - min G over
    those extrema together with the limit at infinity.  Returns the
    constant and an error estimate.
    """
    segments = 64
    edges = math.pi / 2.0 + math.pi * np.arange(segments + 1)
    integrand = lambda t: np.cos(t) / t
    values = []
    err = 0.0
    running = 0.0
    for i in range(segments):
        out = integrate_finite(integrand, (edges[i], edges[i + 1]), tol)
        running += out.value.real
        err += out.error_estimate
        values.append(running)
    tail, tail_err = _cos_over_t_tail(float(edges[-1]), tol)
    err += tail_err
    candidates = [0.0, *values, running + tail]
    return max(candidates) - min(candidates), err


@lru_cache(maxsize=1)
def _cached_constant() -> float:
    return cross_term_constant()[0]


def jk_log_part(k: int) -> float:
    """The growing half of the k-th diagonal term, (a_k/2) * log(N_k).

    Structurally equal to k * log(2) / 2 since a_k * k**3 = k.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    a_k = 1.0 / (k * k)
    log_Nk = k**3 * math.log(2.0)
    return 0.5 * a_k * log_Nk


def jk_main_term(k: int, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[float, float]:
    """Diagonal term of J_k split into its log part and cosine-integral part.

    The diagonal piece integral equals
    (a_k/2) * log(N_k) - (a_k/2) * integral_{2pi}^{2pi*N_k} cos(t)/t dt,
    and the cosine-integral part is bounded by (a_k/2) * C.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k**3 > 1020:
        raise ValueError("N_k overflows double precision beyond k = 10")
    a_k = 1.0 / (k * k)
    N_k = float(1 << k**3)
    head, _ = _cos_over_t_tail(2.0 * math.pi, tol)
    tail, _ = _cos_over_t_tail(2.0 * math.pi * N_k, tol)
    cosint = 0.5 * a_k * (head - tail)
    return jk_log_part(k), cosint


def jk_cross_bound(k: int, K: int, constant: float | None = None) -> float:
    """Upper bound sum_{m<=K, m!=k} a_m * C on all off-diagonal terms."""
    if not 1 <= k <= K:
        raise ValueError("need 1 <= k <= K")
    C = _cached_constant() if constant is None else constant
    return C * sum(1.0 / (m * m) for m in range(1, K + 1) if m != k)


def jk_growth_certificate(
    K: int, constant: float | None = None
) -> list[tuple[int, float]]:
    """Lower bounds on J_k for k = 1..K establishing linear growth.

    Each entry is log part minus (a_k/2) * C minus the off-diagonal bound;
    the increments approach log(2)/2, so J_k cannot tend to the origin
    value 0.  The early bounds may be negative (the constants are coarse);
    only the eventual slope matters.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    C = _cached_constant() if constant is None else constant
    out = []
    for k in range(1, K + 1):
        a_k = 1.0 / (k * k)
        bound = jk_log_part(k) - 0.5 * a_k * C - jk_cross_bound(k, K, C)
        out.append((k, bound))
    return out


def _piece_integral(
    spec: CounterexampleSpec,
    k: int,
    m: int,
    tol: Tolerance,
    max_piece_oscillations: int,
) -> float:
    """Quadrature of a_m * sin(n_k t) sin(n_m t) / t over piece m."""
    n_k, n_m = spec.n(k), spec.n(m)
    if spec.N(m) > max_piece_oscillations:
        raise PrecisionError(
            f"piece {m} carries {spec.N(m)} oscillations; beyond the direct"
            " quadrature cap"
        )
    lo = math.pi / n_m
    hi = math.pi / spec.n(m - 1)
    a_m = float(spec.a(m))
    fk, fm = float(n_k), float(n_m)

    def integrand(t):
        return a_m * np.sin(fk * t) * np.sin(fm * t) / t

    cuts = oscillation_edges(lo, hi, math.pi / (fk + fm))
    out = integrate_finite(integrand, (lo, hi), tol, breakpoints=cuts)
    return float(out.value.real)


def direct_jk(
    spec: CounterexampleSpec,
    k: int,
    tol: Tolerance = DEFAULT_TOLERANCE,
    max_piece_oscillations: int = 4096,
) -> float:
    """J_k by direct quadrature over every piece of the truncated chain.

    Feasible only while each piece holds at most ``max_piece_oscillations``
    oscillations (depth 2 by default); deeper pieces raise
    :class:`PrecisionError`.
    """
    if not 1 <= k:
        raise ValueError("k must be at least 1")
    return sum(
        _piece_integral(spec, k, m, tol, max_piece_oscillations)
        for m in range(1, spec.depth + 1)
    )


def jk_decomposition(
    spec: CounterexampleSpec,
    k: int,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> list[float]:
    """Per-piece values of J_k through the trigonometric rewrites.

    The diagonal piece goes through the log identity of
    :func:`jk_main_term`; off-diagonal pieces are rewritten as differences
    of cos(t)/t integrals after the product-to-sum substitution.  Summing
    the list reproduces the direct quadrature value along an independent
    route.
    """
    out = []
    for m in range(1, spec.depth + 1):
        if m == k:
            log_part, cosint = jk_main_term(k, tol)
            out.append(log_part - cosint)
            continue
        n_k, n_m, n_prev = spec.n(k), spec.n(m), spec.n(m - 1)
        a_m = float(spec.a(m))
        diff = abs(n_k - n_m)
        total = 0.0
        for factor, sign in ((diff, +1.0), (n_k + n_m, -1.0)):
            lo = math.pi * factor / n_m
            hi = math.pi * factor / n_prev
            head, _ = _cos_over_t_tail(lo, tol)
            tail, _ = _cos_over_t_tail(hi, tol)
            total += sign * (head - tail)
        out.append(0.5 * a_m * total)
    return out
