import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvfourier import InversionReport
from pvfourier.cli import main, parse_ladder, parse_shift


def run_cli(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestParsers:
    def test_shift_forms(self):
        assert parse_shift("0+1i").value == 1j
        assert parse_shift("i").value == 1j
        assert parse_shift("2i").value == 2j
        assert parse_shift("0.3+0.7i").value == 0.3 + 0.7j
        assert parse_shift("1+1j").value == 1 + 1j

    def test_shift_must_be_upper_half_plane(self):
        with pytest.raises(ValueError):
            parse_shift("1-2i")

    def test_ladder_validation(self):
        ladder = parse_ladder("25,50,100,200", None)
        assert ladder.radii == (25.0, 50.0, 100.0, 200.0)
        with pytest.raises(ValueError):
            parse_ladder("50,25,100,200", None)


class TestCatalogCommand:
    def test_json_listing(self, capsys):
        status, out, _ = run_cli(capsys, "catalog")
        assert status == 0
        entries = json.loads(out)
        assert len(entries) >= 8
        ids = {e["id"] for e in entries}
        assert {"rect", "laplace", "gaussian", "tent", "gauss2d"} <= ids

    def test_csv_listing(self, capsys):
        status, out, _ = run_cli(capsys, "catalog", "--format", "csv")
        assert status == 0
        assert out.splitlines()[0] == "id,dimension,f_in_L1,has_transform"


class TestPerronCommand:
    def test_contract_holds(self, capsys):
        status, out, _ = run_cli(
            capsys, "perron", "--p", "1", "--w", "0+1i", "--R", "1000"
        )
        assert status == 0
        report = json.loads(out)
        assert report["abs_error"] <= report["bound"]
        assert report["contract_ok"] and report["converged"]
        assert report["reference"]["re"] == pytest.approx(math.exp(-1.0))

    def test_zero_frequency_pathway(self, capsys):
        status, out, _ = run_cli(capsys, "perron", "--p", "0", "--w", "i", "--R", "500")
        assert status == 0
        report = json.loads(out)
        assert report["bound"] is None
        assert report["value"]["re"] == pytest.approx(0.5, abs=1e-3)


class TestInvertCommand:
    def test_csv_table_shape_and_accuracy(self, capsys):
        status, out, _ = run_cli(
            capsys,
            "invert", "--function", "laplace", "--x", "0",
            "--ladder", "25,50,100,200,400,800", "--format", "csv",
        )
        assert status == 0
        lines = out.strip().splitlines()
        assert lines[0] == "R,re_partial,im_partial,abs_error,bound_if_any"
        assert len(lines) == 8  # header + 6 partials + accelerated row
        assert lines[-1].startswith("accelerated,")
        final_error = float(lines[-1].split(",")[3])
        assert final_error <= 1e-3

    def test_json_round_trip(self, capsys):
        status, out, _ = run_cli(
            capsys, "invert", "--function", "laplace", "--x", "0.5"
        )
        assert status == 0
        payload = json.loads(out)
        keys = ("x", "partials", "accelerated", "reference", "abs_error", "converged")
        report = InversionReport.from_dict({k: payload[k] for k in keys})
        assert report.to_dict() == {k: payload[k] for k in keys}

    def test_dirichlet_cross_check(self, capsys):
        status, out, _ = run_cli(
            capsys,
            "invert", "--function", "tent", "--x", "0",
            "--ladder", "25,50,100,200", "--dirichlet",
        )
        assert status == 0
        payload = json.loads(out)
        top_partial = payload["partials"][-1]
        assert payload["dirichlet"]["R"] == top_partial[0]
        assert payload["dirichlet"]["re"] == pytest.approx(top_partial[1], abs=1e-6)

    def test_unknown_function_exits_2(self, capsys):
        status, out, err = run_cli(capsys, "invert", "--function", "nosuch", "--x", "0")
        assert status == 2
        assert "unknown function" in err

    def test_starved_tolerance_exits_3(self, capsys):
        status, out, _ = run_cli(
            capsys,
            "invert", "--function", "bump", "--x", "0",
            "--ladder", "5", "--acceleration", "none",
            "--abs-tol", "1e-14", "--rel-tol", "1e-14", "--max-subdivisions", "1",
        )
        assert status == 3
        json.loads(out)  # partial report still emitted


class TestTransformCommand:
    def test_csv_values(self, capsys):
        status, out, _ = run_cli(
            capsys, "transform", "--function", "rect", "--s", "0,1", "--format", "csv"
        )
        assert status == 0
        rows = [line.split(",") for line in out.strip().splitlines()[1:]]
        assert float(rows[0][1]) == pytest.approx(2.0, abs=1e-10)
        assert float(rows[1][1]) == pytest.approx(2.0 * math.sin(1.0), abs=1e-9)


class TestLocalizeCommand:
    def test_interior_inversion(self, capsys):
        status, out, _ = run_cli(
            capsys,
            "localize", "--function", "monomial0", "--interval", "0,1",
            "--x", "0.5", "--ladder", "25,50,100,200",
        )
        assert status == 0
        payload = json.loads(out)
        assert payload["accelerated"]["re"] == pytest.approx(1.0, abs=2e-2)


class TestCounterexampleCommand:
    def test_report_fields(self, capsys):
        status, out, _ = run_cli(capsys, "counterexample", "--depth", "3")
        assert status == 0
        payload = json.loads(out)
        assert payload["origin_value"] == 0.0
        assert payload["variation_partial_sums"][1]["exact"] == "259/2"
        assert payload["variation_partial_sums"][2]["value"] > 1e6
        slopes = [c["lower_bound"] for c in payload["certificate"]]
        assert slopes[-1] > slopes[0]
        assert payload["cross_term_constant"]["value"] == pytest.approx(
            0.6704082121319267, abs=1e-8
        )


class TestInvert2DCommand:
    def test_plane_inversion(self, capsys):
        status, out, _ = run_cli(
            capsys,
            "invert2d", "--function", "gauss2d", "--point", "0,0",
            "--ladders", "5,10,15,20;5,10,15,20",
        )
        assert status == 0
        payload = json.loads(out)
        assert payload["accelerated"]["re"] == pytest.approx(1.0, abs=1e-3)
        assert payload["x"] == [0.0, 0.0]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    status, out, _ = run_cli(
        capsys, "perron", "--p", "1", "--output", str(target)
    )
    assert status == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["p"] == 1.0


finite = st.floats(allow_nan=False, allow_infinity=False, width=32)


@settings(max_examples=30, deadline=None)
@given(
    radii=st.lists(st.floats(1.0, 1e6, allow_nan=False), min_size=1, max_size=6,
                   unique=True),
    values=st.lists(st.tuples(finite, finite), min_size=6, max_size=6),
    x=finite,
)
def test_report_round_trip_property(radii, values, x):
    radii = sorted(radii)
    partials = tuple(
        (r, complex(re, im)) for r, (re, im) in zip(radii, values)
    )
    report = InversionReport(
        x=float(x), partials=partials, accelerated=partials[-1][1]
    )
    assert InversionReport.from_dict(
        json.loads(json.dumps(report.to_dict()))
    ) == report
