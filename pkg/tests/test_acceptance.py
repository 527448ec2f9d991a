"""Acceptance gate: one test per criterion, at the stated tolerances.

Each test prints a single summary line so a plain ``pytest -s`` run shows
the checklist.  Runtime limits are asserted where stated.
"""

import math
import time
from fractions import Fraction

import numpy as np

import pvfourier as pv

LADDER = pv.TruncationLadder((25.0, 50.0, 100.0, 200.0, 400.0, 800.0))
GAUSS_LADDER = pv.TruncationLadder((10.0, 20.0, 30.0, 40.0))
W_GRID = (pv.ComplexParameter(0.0, 1.0), pv.ComplexParameter(0.3, 0.7))
TWO_PI = 2.0 * math.pi


def report(index, label, detail):
    print(f"ACCEPTANCE {index:02d} {label}: PASS ({detail})")


def test_01_sinc_limit():
    start = time.perf_counter()
    value = pv.sinc_integral(math.inf)
    elapsed = time.perf_counter() - start
    error = abs(value - math.pi / 2.0)
    assert error <= 1e-8
    assert elapsed < 1.0
    report(1, "sinc limit", f"error {error:.2e}, {elapsed * 1e3:.0f} ms")


def test_02_kernel_truncation_bound_law():
    violations = 0
    cases = 0
    worst = 0.0
    for p in (0.5, 1.0, 2.0):
        for w in W_GRID:
            for R in (1e2, 1e3, 1e4):
                bound = pv.semicircle_bound(p, R, w.modulus) / TWO_PI
                err_pos = abs(
                    pv.heaviside_kernel(p, w, R).value
                    - pv.heaviside_reference(p, w)
                )
                err_neg = abs(pv.heaviside_kernel(-p, w, R).value)
                cases += 2
                worst = max(worst, err_pos / bound, err_neg / bound)
                violations += err_pos > bound
                violations += err_neg > bound
    assert violations == 0
    report(2, "kernel bound law", f"{cases} cases, worst err/bound {worst:.3f}")


def test_03_zero_frequency_closed_form():
    rng = np.random.default_rng(7)
    tight = pv.Tolerance(1e-13, 1e-13, 4000)
    worst = 0.0
    for _ in range(5):
        w = pv.ComplexParameter(rng.uniform(-1.5, 1.5), rng.uniform(0.5, 2.0))
        R = rng.uniform(50.0, 400.0)
        kernel = pv.heaviside_kernel(0.0, w, R, tight).value
        closed = pv.pv_zero_closed_form(w, R) / (2j * math.pi)
        worst = max(worst, abs(kernel - closed))
        assert abs(kernel - closed) <= 1e-12
    for w in W_GRID:
        limit = pv.pv_zero_closed_form(w, 1e6) / (2j * math.pi)
        assert abs(limit - 0.5) <= 1e-5
    report(3, "zero-frequency closed form", f"worst kernel gap {worst:.2e}")


def test_04_one_dimensional_inversion():
    start = time.perf_counter()
    laplace, gaussian = pv.get("laplace"), pv.get("gaussian")
    worst_lap = 0.0
    for x in (0.0, 1.0):
        err = pv.invert_at(laplace, x, LADDER).abs_error
        worst_lap = max(worst_lap, err)
        assert err <= 1e-3
    worst_gau = 0.0
    for x in (0.0, 1.0):
        err = pv.invert_at(gaussian, x, GAUSS_LADDER).abs_error
        worst_gau = max(worst_gau, err)
        assert err <= 1e-6
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(
        4,
        "line inversion",
        f"laplace {worst_lap:.2e} <= 1e-3, gaussian {worst_gau:.2e} <= 1e-6, "
        f"{elapsed:.1f} s",
    )


def test_05_kernel_form_consistency():
    worst = 0.0
    for fid, x in (("laplace", 0.0), ("tent", 0.0)):
        f = pv.get(fid)
        for R in (50.0, 200.0):
            single = pv.invert_dirichlet(f, x, R)
            nested = pv.invert_at(
                f, x, pv.TruncationLadder((R,), acceleration="none")
            ).partials[0][1]
            worst = max(worst, abs(single - nested))
            assert abs(single - nested) <= 1e-6
    report(5, "two integral routes agree", f"worst gap {worst:.2e}")


def test_06_ode_reconstruction_grid():
    shifts = (
        pv.ComplexParameter(0.0, 1.0),
        pv.ComplexParameter(0.0, 2.0),
        pv.ComplexParameter(1.0, 1.0),
    )
    points = {
        "gaussian": (-1.1, 0.4, 1.7),
        "laplace": (-1.5, 0.6, 2.0),
        "tent": (-0.6, 0.2, 0.7),
        "bump": (-0.5, 0.1, 0.6),
    }
    identities = 0
    worst = 0.0
    for fid, xs in points.items():
        f = pv.get(fid)
        for w in shifts:
            for x in xs:
                gap = abs(pv.ode_reconstruct(f, w, x) - f.value_at(x))
                worst = max(worst, gap)
                assert gap <= 1e-7, (fid, w, x)
                identities += 1
    assert identities == 36
    report(6, "reconstruction identities", f"36 cases, worst gap {worst:.2e}")


def test_07_localization_independence_and_monomials():
    quick = pv.Tolerance(1e-8, 1e-8)
    ladder = pv.TruncationLadder((25.0, 50.0, 100.0, 200.0))
    tent = pv.get("tent")

    from test_localization import tent_plus_disjoint_bump

    local = pv.localize_invert(tent, -1.0, 1.0, 0.0, ladder, quick).accelerated
    plain = pv.invert_at(tent, 0.0, ladder, quick).accelerated
    extended = pv.invert_at(tent_plus_disjoint_bump(), 0.0, ladder, quick).accelerated
    spread = max(
        abs(local - plain), abs(local - extended), abs(plain - extended)
    )
    assert spread <= 1e-3

    _, principal = pv.monomial_example(2, 0.5, 0.0, 1.0, 1e3)
    monomial_gap = abs(principal - TWO_PI * 0.25)
    assert monomial_gap <= 5e-3 * TWO_PI

    mags = [
        abs(pv.monomial_example(2, 0.5, 0.0, 1.0, R)[0])
        for R in (1e2, 1e3, 1e4)
    ]
    assert mags[0] / mags[1] >= 5.0 and mags[1] / mags[2] >= 5.0
    report(
        7,
        "localization",
        f"extension spread {spread:.2e}, monomial gap {monomial_gap:.2e}, "
        f"boundary decade ratios {mags[0]/mags[1]:.1f}/{mags[1]/mags[2]:.1f}",
    )


def test_08_divergence_certificates():
    exact = 2 * (1 + Fraction(255, 4) + Fraction(2**27 - 1, 9))
    assert pv.variation_partial_sum(3) == exact
    assert float(exact) > 1e6

    expected_log_parts = (0.34657359027997264, 0.6931471805599453, 1.0397207708399179)
    for k, want in enumerate(expected_log_parts, start=1):
        log_part, _ = pv.jk_main_term(k)
        assert abs(log_part - want) <= 1e-10

    spec = pv.CounterexampleSpec(2)
    worst = 0.0
    for k in (1, 2):
        gap = abs(pv.direct_jk(spec, k) - sum(pv.jk_decomposition(spec, k)))
        worst = max(worst, gap)
        assert gap <= 1e-8

    cert = pv.jk_growth_certificate(8)
    slope = cert[-1][1] - cert[-2][1]
    rel = abs(slope - math.log(2.0) / 2.0) / (math.log(2.0) / 2.0)
    assert rel <= 0.05
    report(
        8,
        "divergence certificates",
        f"exact sums, direct-vs-split {worst:.2e}, slope off by {rel:.2%}",
    )


def test_09_plane_inversion_and_reconstruction():
    start = time.perf_counter()
    small = pv.TruncationLadder((5.0, 10.0, 15.0, 20.0))

    gauss_err = pv.invert2d_at(pv.get("gauss2d"), 0.0, 0.0, small, small).abs_error
    assert gauss_err <= 1e-3
    quad_err = pv.invert2d_at(
        pv.get("quadform_gauss"), 0.0, 0.0, small, small
    ).abs_error
    assert quad_err <= 2e-3

    points = ((0.0, 0.0), (1.0, -1.0), (0.5, 0.5), (-0.7, 0.3))
    w = pv.ComplexParameter(0.0, 1.0)
    worst_pde = 0.0
    for fid in ("gauss2d", "gauss_laplace", "quadform_gauss"):
        f = pv.get(fid)
        for (x, y) in points:
            gap = abs(pv.pde_reconstruct2d(f, w, x, y) - f.value_at(x, y))
            worst_pde = max(worst_pde, gap)
            assert gap <= 1e-5, (fid, x, y)

    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    report(
        9,
        "plane inversion",
        f"inversion errs {gauss_err:.2e}/{quad_err:.2e}, "
        f"12 reconstruction ids worst {worst_pde:.2e}, {elapsed:.1f} s",
    )


def test_10_transform_catalog_agreement():
    frequencies = (0.0, 0.5, -0.5, 1.0, -1.0, 5.0, -5.0, 20.0, -20.0)
    worst = 0.0
    for fid in ("rect", "laplace", "gaussian", "tent"):
        f = pv.get(fid)
        for s in frequencies:
            numeric = pv.fourier_transform(f, s).value
            closed = complex(np.asarray(f.transform(np.asarray(float(s)))))
            worst = max(worst, abs(numeric - closed))
            assert abs(numeric - closed) <= 1e-7, (fid, s)
    rect = pv.get("rect")
    assert float(rect.transform(np.asarray(0.0))) == 2.0
    assert abs(pv.fourier_transform(rect, 0.0).value - 2.0) <= 1e-10
    assert abs(pv.fourier_transform(rect, 1.0).value - 2.0 * math.sin(1.0)) <= 1e-9
    report(10, "transform catalog", f"36 samples, worst gap {worst:.2e}")


def test_11_decay_bounds():
    checked = 0
    for fid in ("laplace", "gaussian", "tent", "bump"):
        f = pv.get(fid)
        for x in (2.0, 5.0, 10.0, 50.0):
            bound1, bound2, value = pv.decay_check(f, x)
            assert value <= bound1
            assert value <= bound2
            checked += 1
    report(11, "decay bounds", f"{checked} (function, point) pairs")
