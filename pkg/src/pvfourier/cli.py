"""Command-line front end.

Every subcommand emits a machine-readable report (JSON by default, CSV on
request) to stdout or to ``--output``.  The exit status encodes the run
contract: 0 when every declared check held, 2 for an unknown function id,
3 when a quadrature failed to converge (the partial report is still
emitted).

Inversion CSV tables use the fixed columns
``R, re_partial, im_partial, abs_error, bound_if_any`` with a final
``accelerated`` row, so convergence plots can be produced by external
tools directly.  Floats are serialized with up to 17 significant digits,
which round-trips doubles exactly.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field

from . import counterexample as cx
from .inversion import (
    DEFAULT_LADDER,
    TruncationLadder,
    invert_at,
    invert_dirichlet,
)
from .localization import localize_invert
from .multivar import invert2d_at
from .perron import (
    ComplexParameter,
    heaviside_kernel,
    heaviside_reference,
    semicircle_bound,
    pv_zero_closed_form,
)
from .quadrature import Tolerance
from .testfns import TestFunction2D, catalog, get
from .transform import fourier_transform

__all__ = ["RunConfig", "run", "main"]

STATUS_OK = 0
STATUS_UNKNOWN_FUNCTION = 2
STATUS_NOT_CONVERGED = 3


@dataclass
class RunConfig:
    """One resolved CLI invocation."""

    subcommand: str
    function_id: str | None = None
    points: list[float] = field(default_factory=list)
    ladder: TruncationLadder = DEFAULT_LADDER
    ladder2: TruncationLadder | None = None
    tolerance: Tolerance = Tolerance()
    output_format: str = "json"
    output_path: str | None = None
    shift: ComplexParameter = ComplexParameter(0.0, 1.0)
    p: float = 1.0
    radius: float = 1000.0
    interval: tuple[float, float] | None = None
    depth: int = 3
    dirichlet: bool = False
    acceleration: str | None = None


def parse_shift(text: str) -> ComplexParameter:
    """Parse '0.3+0.7i', '2i', 'i', or the j-suffixed equivalents."""
    s = text.strip().replace("I", "i").replace("i", "j")
    s = re.sub(r"(?<![0-9.])j", "1j", s)
    value = complex(s)
    return ComplexParameter(value.real, value.imag)


def parse_ladder(text: str, acceleration: str | None) -> TruncationLadder:
    radii = tuple(float(tok) for tok in text.split(",") if tok.strip())
    return TruncationLadder(radii, acceleration or "pairwise-averaging")


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return "" if value is None else str(value)


def _write_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _inversion_rows(report_dict):
    header = ["R", "re_partial", "im_partial", "abs_error", "bound_if_any"]
    rows = []
    reference = report_dict.get("reference")
    for r, re_part, im_part in report_dict["partials"]:
        err = (
            abs(complex(re_part, im_part) - reference)
            if reference is not None
            else None
        )
        rows.append([r, re_part, im_part, err, None])
    acc = report_dict["accelerated"]
    rows.append(
        ["accelerated", acc["re"], acc["im"], report_dict.get("abs_error"), None]
    )
    return header, rows


def _entry_summary(entry) -> dict:
    if isinstance(entry, TestFunction2D):
        return {
            "id": entry.id,
            "dimension": 2,
            "f_in_L1": entry.f_l1,
            "partials_in_L1": entry.fx_l1 and entry.fy_l1 and entry.fxy_l1,
            "twice_differentiable": entry.twice_differentiable,
            "has_transform": entry.transform2d is not None,
        }
    return {
        "id": entry.id,
        "dimension": 1,
        "support": list(entry.support) if entry.support else None,
        "is_abs_cont": entry.is_abs_cont,
        "f_in_L1": entry.f_in_L1,
        "fprime_in_L1": entry.fprime_in_L1,
        "l1_norm": None if math.isinf(entry.l1_norm) else entry.l1_norm,
        "sup_norm": None if math.isinf(entry.sup_norm) else entry.sup_norm,
        "deriv_l1_norm": entry.deriv_l1_norm,
        "has_transform": entry.transform is not None,
        "kinks": list(entry.kinks),
    }


def _run_catalog(config: RunConfig):
    report = [_entry_summary(e) for e in catalog()]
    header = ["id", "dimension", "f_in_L1", "has_transform"]
    rows = [
        [e["id"], e["dimension"], e["f_in_L1"], e["has_transform"]] for e in report
    ]
    return STATUS_OK, report, (header, rows)


def _run_transform(config: RunConfig):
    f = get(config.function_id)
    status = STATUS_OK
    report = {"function": f.id, "values": []}
    rows = []
    for s in config.points:
        out = fourier_transform(f, s, config.tolerance)
        if not out.converged:
            status = STATUS_NOT_CONVERGED
        report["values"].append(
            {
                "s": s,
                "re": out.value.real,
                "im": out.value.imag,
                "error_estimate": out.error_estimate,
                "converged": out.converged,
            }
        )
        rows.append([s, out.value.real, out.value.imag])
    return status, report, (["s", "re", "im"], rows)


def _run_invert(config: RunConfig):
    f = get(config.function_id)
    x = config.points[0]
    override = not f.satisfies_inversion_hypotheses()
    report_obj = invert_at(
        f, x, config.ladder, config.tolerance, override_hypotheses=override
    )
    report = report_obj.to_dict()
    report["function"] = f.id
    report["hypotheses_overridden"] = override
    if config.dirichlet:
        top = config.ladder.radii[-1]
        kernel_value = invert_dirichlet(f, x, top, config.tolerance)
        report["dirichlet"] = {
            "R": top,
            "re": kernel_value.real,
            "im": kernel_value.imag,
        }
    status = STATUS_OK if report_obj.converged else STATUS_NOT_CONVERGED
    return status, report, _inversion_rows(report)


def _run_localize(config: RunConfig):
    f = get(config.function_id)
    x1, x2 = config.interval
    report_obj = localize_invert(
        f, x1, x2, config.points[0], config.ladder, config.tolerance
    )
    report = report_obj.to_dict()
    report["function"] = f.id
    report["interval"] = [x1, x2]
    status = STATUS_OK if report_obj.converged else STATUS_NOT_CONVERGED
    return status, report, _inversion_rows(report)


def _run_perron(config: RunConfig):
    w, p, R = config.shift, config.p, config.radius
    out = heaviside_kernel(p, w, R, config.tolerance)
    reference = heaviside_reference(p, w)
    abs_error = abs(out.value - reference)
    bound = None
    contract_ok = True
    if p != 0.0:
        bound = semicircle_bound(abs(p), R, w.modulus) / (2.0 * math.pi)
        contract_ok = abs_error <= bound
    else:
        closed = pv_zero_closed_form(w, R) / (2j * math.pi)
        contract_ok = abs(out.value - closed) <= 1e-9
    report = {
        "p": p,
        "w": {"re": w.xi, "im": w.eta},
        "R": R,
        "value": {"re": out.value.real, "im": out.value.imag},
        "reference": {"re": reference.real, "im": reference.imag},
        "abs_error": abs_error,
        "bound": bound,
        "converged": out.converged,
        "contract_ok": contract_ok,
    }
    status = STATUS_OK if (out.converged and contract_ok) else STATUS_NOT_CONVERGED
    rows = (
        ["R", "re_partial", "im_partial", "abs_error", "bound_if_any"],
        [[R, out.value.real, out.value.imag, abs_error, bound]],
    )
    return status, report, rows


def _run_counterexample(config: RunConfig):
    K = config.depth
    constant, constant_err = cx.cross_term_constant(config.tolerance)
    variations = [
        {"K": k, "value": float(cx.variation_partial_sum(k)),
         "exact": str(cx.variation_partial_sum(k))}
        for k in range(1, K + 1)
    ]
    main_terms = []
    for k in range(1, min(K, 6) + 1):
        log_part, cosint = cx.jk_main_term(k, config.tolerance)
        main_terms.append({"k": k, "log_part": log_part, "cosint_part": cosint})
    certificate = [
        {"k": k, "lower_bound": b}
        for k, b in cx.jk_growth_certificate(K, constant)
    ]
    report = {
        "depth": K,
        "origin_value": 0.0,
        "variation_partial_sums": variations,
        "cross_term_constant": {"value": constant, "error_estimate": constant_err},
        "main_terms": main_terms,
        "certificate": certificate,
    }
    rows = [
        [c["k"],
         main_terms[c["k"] - 1]["log_part"] if c["k"] <= len(main_terms) else None,
         c["lower_bound"]]
        for c in certificate
    ]
    return STATUS_OK, report, (["k", "log_part", "lower_bound"], rows)


def _run_invert2d(config: RunConfig):
    f = get(config.function_id)
    x, y = config.points[0], config.points[1]
    ladder2 = config.ladder2 or config.ladder
    report_obj = invert2d_at(
        f, x, y, config.ladder, ladder2, config.tolerance
    )
    report = report_obj.to_dict()
    report["function"] = f.id
    status = STATUS_OK if report_obj.converged else STATUS_NOT_CONVERGED
    return status, report, _inversion_rows(report)


_HANDLERS = {
    "catalog": _run_catalog,
    "transform": _run_transform,
    "invert": _run_invert,
    "localize": _run_localize,
    "perron": _run_perron,
    "counterexample": _run_counterexample,
    "invert2d": _run_invert2d,
}


def run(config: RunConfig) -> int:
    """Dispatch a resolved configuration and write its report."""
    try:
        status, report, csv_data = _HANDLERS[config.subcommand](config)
    except KeyError as exc:
        sys.stderr.write(f"error: {exc.args[0]}\n")
        return STATUS_UNKNOWN_FUNCTION

    if config.output_format == "csv" and csv_data is not None:
        text = _write_csv(*csv_data)
    else:
        text = json.dumps(report, indent=2) + "\n"

    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvfourier",
        description="Principal-value Fourier inversion toolkit",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", default=None)
        sp.add_argument("--abs-tol", type=float, default=1e-10)
        sp.add_argument("--rel-tol", type=float, default=1e-10)
        sp.add_argument("--max-subdivisions", type=int, default=2000)

    common(sub.add_parser("catalog", help="list catalog entries"))

    sp = sub.add_parser("transform", help="numerical transform values")
    sp.add_argument("--function", required=True)
    sp.add_argument("--s", required=True, help="comma-separated frequencies")
    common(sp)

    sp = sub.add_parser("invert", help="ladder inversion at a point")
    sp.add_argument("--function", required=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--ladder", default="25,50,100,200,400,800")
    sp.add_argument("--acceleration", default="pairwise-averaging")
    sp.add_argument("--dirichlet", action="store_true",
                    help="also evaluate the single-integral kernel form")
    common(sp)

    sp = sub.add_parser("localize", help="interval-restricted inversion")
    sp.add_argument("--function", required=True)
    sp.add_argument("--interval", required=True, help="a,b")
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--ladder", default="25,50,100,200,400,800")
    sp.add_argument("--acceleration", default="pairwise-averaging")
    common(sp)

    sp = sub.add_parser("perron", help="truncated step-function kernel")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--w", default="0+1i")
    sp.add_argument("--R", type=float, default=1000.0)
    common(sp)

    sp = sub.add_parser("counterexample", help="divergence certificates")
    sp.add_argument("--depth", type=int, default=3)
    common(sp)

    sp = sub.add_parser("invert2d", help="plane inversion at a point")
    sp.add_argument("--function", required=True)
    sp.add_argument("--point", required=True, help="x,y")
    sp.add_argument("--ladders", default="5,10,15,20;5,10,15,20",
                    help="outer;inner radii")
    sp.add_argument("--acceleration", default="pairwise-averaging")
    common(sp)

    return parser


def _config_from_args(args) -> RunConfig:
    config = RunConfig(subcommand=args.subcommand)
    config.output_format = args.format
    config.output_path = args.output
    config.tolerance = Tolerance(args.abs_tol, args.rel_tol, args.max_subdivisions)

    if args.subcommand == "transform":
        config.function_id = args.function
        config.points = [float(tok) for tok in args.s.split(",") if tok.strip()]
    elif args.subcommand == "invert":
        config.function_id = args.function
        config.points = [args.x]
        config.ladder = parse_ladder(args.ladder, args.acceleration)
        config.dirichlet = args.dirichlet
    elif args.subcommand == "localize":
        config.function_id = args.function
        a, b = (float(tok) for tok in args.interval.split(","))
        config.interval = (a, b)
        config.points = [args.x]
        config.ladder = parse_ladder(args.ladder, args.acceleration)
    elif args.subcommand == "perron":
        config.p = args.p
        config.shift = parse_shift(args.w)
        config.radius = args.R
    elif args.subcommand == "counterexample":
        config.depth = args.depth
    elif args.subcommand == "invert2d":
        config.function_id = args.function
        config.points = [float(tok) for tok in args.point.split(",")]
        outer, _, inner = args.ladders.partition(";")
        config.ladder = parse_ladder(outer, args.acceleration)
        config.ladder2 = parse_ladder(inner or outer, args.acceleration)
    return config


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return run(_config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
