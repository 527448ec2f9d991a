"""Averaging transforms for oscillating partial sums and truncation ladders.

Iterated averaging of consecutive partial sums (one averaging pass per
level) is the classical transformation for alternating sequences: each
level roughly halves the oscillation amplitude around the limit.  Applied
to a monotone sequence it *lags* instead, so every routine here guards the
averaging step: a pass runs only while consecutive increments genuinely
point in opposing directions.  When the guard trips immediately the latest
raw partial is returned unchanged, which is the best available estimate
for one-sided convergence.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["ACCELERATION_POLICIES", "alternating_limit", "ladder_accelerate"]

ACCELERATION_POLICIES = ("none", "pairwise-averaging", "iterated-averaging")


def _alternating(seq: np.ndarray) -> bool:
    """True when consecutive increments of ``seq`` flip direction each step."""
    diffs = np.diff(seq)
    if len(diffs) < 2:
        return False
    inner = np.real(diffs[:-1] * np.conj(diffs[1:]))
    return bool(np.all(inner < 0))


def alternating_limit(partial_sums) -> tuple[complex, float]:
    """Accelerated limit of oscillating partial sums plus a tail estimate.

    Averaging passes are applied while the sequence keeps alternating; the
    returned tail estimate is the magnitude of the final level's last
    increment (infinite when fewer than three partials are available).
    """
    seq = np.asarray(partial_sums, dtype=complex)
    if seq.size == 0:
        raise ValueError("no partial sums supplied")
    if seq.size < 3:
        return complex(seq[-1]), math.inf
    while seq.size >= 3 and _alternating(seq):
        seq = 0.5 * (seq[:-1] + seq[1:])
    tail = abs(seq[-1] - seq[-2]) if seq.size >= 2 else math.inf
    return complex(seq[-1]), float(tail)


def ladder_accelerate(partials, policy: str) -> complex:
    """Estimate the limit of truncation-ladder partial values.

    ``pairwise-averaging`` applies a single guarded averaging pass;
    ``iterated-averaging`` repeats passes while the increments alternate.
    Both fall back to the last raw partial when the sequence is one-sided,
    so the accelerated value is never worse than plain truncation.
    """
    if policy not in ACCELERATION_POLICIES:
        raise ValueError(f"unknown acceleration policy: {policy!r}")
    seq = np.asarray(partials, dtype=complex)
    if seq.size == 0:
        raise ValueError("no partial values supplied")
    if policy == "none" or seq.size < 3:
        return complex(seq[-1])
    if policy == "pairwise-averaging":
        if _alternating(seq):
            seq = 0.5 * (seq[:-1] + seq[1:])
        return complex(seq[-1])
    while seq.size >= 3 and _alternating(seq):
        seq = 0.5 * (seq[:-1] + seq[1:])
    return complex(seq[-1])
