"""Desk-scale numerical toolkit for principal-value Fourier inversion.

The package evaluates, with explicit error control, the computational
objects behind pointwise inversion of the continuous Fourier transform:
the contour-integral representation of the Heaviside step function with
its truncation bound, symmetric principal-value inversion on the line and
in the plane, reconstruction through a first-order differential identity,
inversion from interval restrictions only, and exact-arithmetic
certificates for a continuous integrable function whose inversion diverges
at the origin.
"""

from .acceleration import alternating_limit, ladder_accelerate
from .quadrature import (
    DivergenceSuspectedError,
    QuadratureOutcome,
    Tolerance,
    integrate_finite,
    integrate_oscillatory,
    principal_value,
    sinc_integral,
)
from .perron import (
    ComplexParameter,
    HeavisideValue,
    heaviside_kernel,
    heaviside_reference,
    heaviside_step,
    pv_zero_closed_form,
    semicircle_bound,
)
from .testfns import (
    MetadataError,
    TestFunction,
    TestFunction2D,
    catalog,
    catalog_1d,
    catalog_2d,
    get,
    norms,
)
from .transform import decay_check, fourier_transform, riemann_lebesgue_probe
from .inversion import (
    DEFAULT_LADDER,
    InversionReport,
    TruncationLadder,
    invert_at,
    invert_dirichlet,
    ode_reconstruct,
)
from .localization import (
    localize_invert,
    monomial_example,
    ode_reconstruct_interval,
)
from .counterexample import (
    CounterexampleSpec,
    PrecisionError,
    build,
    cross_term_constant,
    direct_jk,
    eval_at_pi_multiple,
    jk_cross_bound,
    jk_decomposition,
    jk_growth_certificate,
    jk_log_part,
    jk_main_term,
    variation_partial_sum,
)
from .multivar import (
    RectangleIncrement,
    fourier2d,
    invert2d_at,
    invert2d_partial,
    mixed_partial_check,
    pde_reconstruct2d,
    rectangle_increment,
)

__version__ = "0.1.0"
