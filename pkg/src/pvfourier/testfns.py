"""Catalog of test functions with evaluators, derivatives and metadata.

Each one-dimensional entry bundles a vectorized evaluator, its derivative
and closed-form Fourier transform when available, support and smoothness
metadata, and frozen norm values.  The hypothesis flags (absolute
continuity, L1 membership of f and f') drive precondition checks in the
inversion routines; entries violating the hypotheses (the unit rectangle,
the monomial family) are included deliberately as counterpoints and demos.

Two-dimensional entries carry the four partial-derivative evaluators and
per-factor L1 flags needed by the plane inversion and reconstruction
routines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quadrature import DEFAULT_TOLERANCE, Tolerance, integrate_finite

__all__ = [
    "TestFunction",
    "TestFunction2D",
    "MetadataError",
    "catalog",
    "catalog_1d",
    "catalog_2d",
    "get",
    "norms",
]

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

# L1 norm of the normalized bump exp(1 - 1/(1-x^2)); frozen from high-order
# quadrature and re-verified by the norms() oracle in the test suite.
BUMP_L1 = 1.2069003224378762


class MetadataError(ValueError):
    """Stored norm metadata disagrees with its numerical verification."""


@dataclass(frozen=True)
class TestFunction:
    id: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray] | None = None
    transform: Callable[[np.ndarray], np.ndarray] | None = None
    support: tuple[float, float] | None = None  # None means the whole line
    is_abs_cont: bool = False
    f_in_L1: bool = False
    fprime_in_L1: bool = False
    l1_norm: float = math.inf
    sup_norm: float = math.inf
    deriv_l1_norm: float | None = None
    kinks: tuple[float, ...] = ()
    l1_tail: Callable[[float], float] | None = None  # bound on mass beyond |x| > X

    def satisfies_inversion_hypotheses(self) -> bool:
        return self.is_abs_cont and self.f_in_L1 and self.fprime_in_L1

    def value_at(self, x: float) -> float:
        return float(np.asarray(self.evaluate(np.asarray([x], dtype=float)))[0])


@dataclass(frozen=True)
class TestFunction2D:
    id: str
    evaluate: Callable[[np.ndarray, np.ndarray], np.ndarray]
    fx: Callable[[np.ndarray, np.ndarray], np.ndarray]
    fy: Callable[[np.ndarray, np.ndarray], np.ndarray]
    fxy: Callable[[np.ndarray, np.ndarray], np.ndarray]
    transform2d: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    f_l1: bool = True
    fx_l1: bool = True
    fy_l1: bool = True
    fxy_l1: bool = True
    twice_differentiable: bool = True
    y_kinks: tuple[float, ...] = ()
    # half-widths beyond which the integrand mass is below double rounding
    trunc: tuple[float, float] = (9.5, 9.5)

    def value_at(self, x: float, y: float) -> float:
        return float(np.asarray(self.evaluate(np.asarray(x, float), np.asarray(y, float))))


def _rect(x):
    return np.where(np.abs(x) <= 1.0, 1.0, 0.0)


def _rect_hat(s):
    return 2.0 * np.sinc(s / np.pi)


def _laplace(x):
    return np.exp(-np.abs(x))


def _laplace_deriv(x):
    return -np.sign(x) * np.exp(-np.abs(x))


def _laplace_hat(s):
    return 2.0 / (1.0 + s * s)


def _gauss(x):
    return np.exp(-x * x / 2.0)


def _gauss_deriv(x):
    return -x * np.exp(-x * x / 2.0)


def _gauss_hat(s):
    return SQRT_TWO_PI * np.exp(-s * s / 2.0)


def _tent(x):
    return np.maximum(0.0, 1.0 - np.abs(x))


def _tent_deriv(x):
    return np.where(np.abs(x) < 1.0, -np.sign(x), 0.0)


def _tent_hat(s):
    return np.sinc(s / (2.0 * np.pi)) ** 2


def _bump(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xi = x[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - xi * xi))
    return out


def _bump_deriv(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xi = x[inside]
    one_minus = 1.0 - xi * xi
    out[inside] = np.exp(1.0 - 1.0 / one_minus) * (-2.0 * xi / one_minus**2)
    return out


def _monomial(n: int) -> TestFunction:
    def ev(x, n=n):
        return np.asarray(x, dtype=float) ** n

    def dv(x, n=n):
        x = np.asarray(x, dtype=float)
        if n == 0:
            return np.zeros_like(x)
        return n * x ** (n - 1)

    return TestFunction(
        id=f"monomial{n}",
        evaluate=ev,
        deriv=dv,
        support=None,
        is_abs_cont=True,  # locally, on every compact interval
        f_in_L1=False,
        fprime_in_L1=False,
    )


_CATALOG_1D: tuple[TestFunction, ...] = (
    TestFunction(
        id="rect",
        evaluate=_rect,
        deriv=None,
        transform=_rect_hat,
        support=(-1.0, 1.0),
        is_abs_cont=False,  # jumps at the support edges
        f_in_L1=True,
        fprime_in_L1=False,
        l1_norm=2.0,
        sup_norm=1.0,
        kinks=(-1.0, 1.0),
    ),
    TestFunction(
        id="laplace",
        evaluate=_laplace,
        deriv=_laplace_deriv,
        transform=_laplace_hat,
        support=None,
        is_abs_cont=True,
        f_in_L1=True,
        fprime_in_L1=True,
        l1_norm=2.0,
        sup_norm=1.0,
        deriv_l1_norm=2.0,
        kinks=(0.0,),
        l1_tail=lambda X: 2.0 * math.exp(-X),
    ),
    TestFunction(
        id="gaussian",
        evaluate=_gauss,
        deriv=_gauss_deriv,
        transform=_gauss_hat,
        support=None,
        is_abs_cont=True,
        f_in_L1=True,
        fprime_in_L1=True,
        l1_norm=SQRT_TWO_PI,
        sup_norm=1.0,
        deriv_l1_norm=2.0,
        l1_tail=lambda X: SQRT_TWO_PI * math.erfc(X / math.sqrt(2.0)),
    ),
    TestFunction(
        id="tent",
        evaluate=_tent,
        deriv=_tent_deriv,
        transform=_tent_hat,
        support=(-1.0, 1.0),
        is_abs_cont=True,
        f_in_L1=True,
        fprime_in_L1=True,
        l1_norm=1.0,
        sup_norm=1.0,
        deriv_l1_norm=2.0,
        kinks=(-1.0, 0.0, 1.0),
    ),
    TestFunction(
        id="bump",
        evaluate=_bump,
        deriv=_bump_deriv,
        transform=None,
        support=(-1.0, 1.0),
        is_abs_cont=True,
        f_in_L1=True,
        fprime_in_L1=True,
        l1_norm=BUMP_L1,
        sup_norm=1.0,
        deriv_l1_norm=2.0,
    ),
    _monomial(0),
    _monomial(1),
    _monomial(2),
    _monomial(3),
)


def _gauss2d(x, y):
    return np.exp(-(x * x + y * y) / 2.0)


def _quadform(x, y):
    return np.exp(-(x * x + x * y + y * y))


_CATALOG_2D: tuple[TestFunction2D, ...] = (
    TestFunction2D(
        id="gauss2d",
        evaluate=_gauss2d,
        fx=lambda x, y: -x * _gauss2d(x, y),
        fy=lambda x, y: -y * _gauss2d(x, y),
        fxy=lambda x, y: x * y * _gauss2d(x, y),
        transform2d=lambda s, t: 2.0 * np.pi * np.exp(-(s * s + t * t) / 2.0),
        trunc=(9.5, 9.5),
    ),
    TestFunction2D(
        id="gauss_laplace",
        evaluate=lambda x, y: _gauss(x) * _laplace(y),
        fx=lambda x, y: _gauss_deriv(x) * _laplace(y),
        fy=lambda x, y: _gauss(x) * _laplace_deriv(y),
        fxy=lambda x, y: _gauss_deriv(x) * _laplace_deriv(y),
        transform2d=lambda s, t: _gauss_hat(s) * _laplace_hat(t),
        twice_differentiable=False,  # kink along y = 0
        y_kinks=(0.0,),
        trunc=(9.5, 40.0),
    ),
    TestFunction2D(
        id="quadform_gauss",
        evaluate=_quadform,
        fx=lambda x, y: -(2.0 * x + y) * _quadform(x, y),
        fy=lambda x, y: -(x + 2.0 * y) * _quadform(x, y),
        fxy=lambda x, y: ((2.0 * x + y) * (x + 2.0 * y) - 1.0) * _quadform(x, y),
        transform2d=lambda s, t: (2.0 * np.pi / math.sqrt(3.0))
        * np.exp(-(s * s - s * t + t * t) / 3.0),
        trunc=(13.5, 13.5),
    ),
)


def catalog_1d() -> list[TestFunction]:
    return list(_CATALOG_1D)


def catalog_2d() -> list[TestFunction2D]:
    return list(_CATALOG_2D)


def catalog() -> list[TestFunction | TestFunction2D]:
    """All catalog entries, one-dimensional first."""
    return [*_CATALOG_1D, *_CATALOG_2D]


def get(function_id: str) -> TestFunction | TestFunction2D:
    for entry in catalog():
        if entry.id == function_id:
            return entry
    raise KeyError(f"unknown function id: {function_id!r}")


def _abs_integral(fn, f: TestFunction, tol: Tolerance) -> float:
    """Integral of |fn| over the effective support of f."""
    absfn = lambda x: np.abs(np.asarray(fn(x)))
    if f.support is not None:
        a, b = f.support
        return float(
            integrate_finite(absfn, (a, b), tol, breakpoints=f.kinks).value.real
        )
    if f.l1_tail is None:
        raise MetadataError(
            f"{f.id}: infinite support without a tail bound; "
            "cannot verify an L1 flag"
        )
    X = 1.0
    while f.l1_tail(X) > tol.absolute / 10.0:
        X *= 1.5
        if X > 1e6:
            raise MetadataError(f"{f.id}: tail bound never drops below tolerance")
    out = integrate_finite(absfn, (-X, X), tol, breakpoints=f.kinks)
    return float(out.value.real)


def norms(
    f: TestFunction, tol: Tolerance = DEFAULT_TOLERANCE
) -> tuple[float, float, float | None]:
    """Numerically verify stored norm metadata to 1e-8 relative.

    Returns (l1_norm, sup_norm, deriv_l1_norm or None); raises
    :class:`MetadataError` when a verified value disagrees with the stored
    metadata.
    """
    if not f.f_in_L1:
        raise ValueError(f"{f.id} is not flagged f_in_L1")
    l1 = _abs_integral(f.evaluate, f, tol)

    if f.support is not None:
        lo, hi = f.support
    else:
        lo, hi = -40.0, 40.0
    grid = np.unique(np.concatenate([np.linspace(lo, hi, 20001), [0.0], f.kinks]))
    grid = grid[(grid >= lo) & (grid <= hi)]
    sup = float(np.max(np.abs(f.evaluate(grid))))

    deriv_l1 = None
    if f.deriv is not None and f.fprime_in_L1:
        deriv_l1 = _abs_integral(f.deriv, f, tol)

    checks = [("l1_norm", l1, f.l1_norm), ("sup_norm", sup, f.sup_norm)]
    if deriv_l1 is not None and f.deriv_l1_norm is not None:
        checks.append(("deriv_l1_norm", deriv_l1, f.deriv_l1_norm))
    for name, measured, stored in checks:
        if math.isinf(stored):
            continue
        if abs(measured - stored) > 1e-8 * max(1.0, abs(stored)):
            raise MetadataError(
                f"{f.id}.{name}: stored {stored!r} vs measured {measured!r}"
            )
    return l1, sup, deriv_l1
