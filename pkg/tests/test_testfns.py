import math

import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss

from pvfourier import (
    MetadataError,
    catalog,
    catalog_1d,
    catalog_2d,
    get,
    norms,
)

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def test_catalog_size_and_ids():
    entries = catalog()
    assert len(entries) >= 8
    ids = [e.id for e in entries]
    assert len(set(ids)) == len(ids)
    for required in ("rect", "laplace", "gaussian", "tent", "bump",
                     "monomial0", "monomial2", "gauss2d", "quadform_gauss"):
        assert required in ids


def test_unknown_id_raises():
    with pytest.raises(KeyError):
        get("nosuch")


def test_rect_transform_values():
    rect = get("rect")
    assert float(rect.transform(np.asarray(0.0))) == 2.0
    assert abs(float(rect.transform(np.asarray(math.pi)))) <= 1e-14


def test_laplace_transform_at_zero_equals_l1_norm():
    lap = get("laplace")
    assert float(lap.transform(np.asarray(0.0))) == lap.l1_norm == 2.0


@pytest.mark.parametrize(
    "fid,expected",
    [
        ("laplace", (2.0, 1.0, 2.0)),
        ("tent", (1.0, 1.0, 2.0)),
        ("gaussian", (SQRT_TWO_PI, 1.0, 2.0)),
    ],
)
def test_norms_match_closed_forms(fid, expected):
    measured = norms(get(fid))
    for got, want in zip(measured, expected):
        assert abs(got - want) <= 1e-8 * max(1.0, want)


def test_bump_l1_against_independent_oracle():
    bump = get("bump")
    nodes, weights = leggauss(80)
    vals = bump.evaluate(nodes)  # support is exactly [-1, 1]
    oracle = float(weights @ vals)
    assert abs(bump.l1_norm - oracle) <= 1e-10
    # and the package quadrature agrees with the stored value
    assert abs(norms(bump)[0] - bump.l1_norm) <= 1e-8


def test_norms_precondition():
    with pytest.raises(ValueError):
        norms(get("monomial2"))


def test_metadata_mismatch_detected():
    from dataclasses import replace

    wrong = replace(get("tent"), l1_norm=1.5)
    with pytest.raises(MetadataError):
        norms(wrong)


@pytest.mark.parametrize(
    "fid,points",
    [
        ("gaussian", (-1.3, 0.4, 2.0)),
        ("bump", (-0.5, 0.2, 0.8)),
        ("laplace", (-2.0, 1.5, 0.7)),
        ("tent", (-0.5, 0.5, 0.25)),
    ],
)
def test_derivative_consistency(fid, points):
    f = get(fid)
    for x in points:
        exact = float(np.asarray(f.deriv(np.asarray([x])))[0])
        errs = {}
        for h in (1e-3, 1e-4):
            fd = (f.value_at(x + h) - f.value_at(x - h)) / (2.0 * h)
            errs[h] = abs(fd - exact)
            assert errs[h] <= max(60.0 * h * h, 1e-11)
        # second-order scaling: shrinking h tenfold cuts the error ~100x
        if errs[1e-3] > 1e-9:
            assert errs[1e-4] <= errs[1e-3] / 20.0


@pytest.mark.parametrize("fid", ["laplace", "gaussian", "tent", "bump"])
def test_decay_metadata_honesty(fid):
    # entries flagged absolutely continuous with integrable derivative
    # must actually vanish at infinity, at the stated rate
    from pvfourier import decay_check

    f = get(fid)
    assert f.is_abs_cont and f.fprime_in_L1
    for X in (10.0, 50.0, 100.0):
        _, bound2, value = decay_check(f, X)
        assert value <= bound2


@pytest.mark.parametrize("fid", ["rect", "laplace", "gaussian", "tent"])
def test_transform_bounded_by_l1_norm(fid):
    f = get(fid)
    s = np.linspace(-30.0, 30.0, 601)
    assert np.all(np.abs(f.transform(s)) <= f.l1_norm + 1e-12)


def test_compact_support_entries_flagged_integrable():
    for f in catalog_1d():
        if f.support is not None:
            assert f.f_in_L1


def test_2d_entries_have_partials_and_flags():
    for f in catalog_2d():
        assert f.f_l1 and f.fx_l1 and f.fy_l1 and f.fxy_l1
        x, y = 0.3, -0.4
        assert np.isfinite(f.fx(x, y))
        assert np.isfinite(f.fy(x, y))
        assert np.isfinite(f.fxy(x, y))


def test_2d_values_at_origin():
    assert get("gauss2d").value_at(0.0, 0.0) == 1.0
    assert get("quadform_gauss").value_at(0.0, 0.0) == 1.0
    assert get("gauss_laplace").value_at(0.0, 0.0) == 1.0


def test_monomial_family_values():
    mono3 = get("monomial3")
    assert mono3.value_at(2.0) == 8.0
    assert float(np.asarray(mono3.deriv(np.asarray([2.0])))[0]) == 12.0
    assert math.isinf(mono3.l1_norm)
