import argparse
import json
import math
import sys

import numpy as np
import pandas as pd

from gpibound._version import __version__
from gpibound.bounds import DEFAULT_TOLERANCE, OppositeSignBounds, SameSignBound, check_point
from gpibound.errors import DomainError, GPIError
from gpibound.moments import MomentSpec, product_moment_rho_one, product_moment_series
from gpibound.oracles import McConfig, mc_product_moment, quad_abs_moment_1d, quad_product_moment
from gpibound.selftest import SUITES, run_selftest
from gpibound.sweep.callbacks import BuildRow, CheckBounds
from gpibound.sweep.parse import parse_values
from gpibound.sweep.presets import PRESETS
from gpibound.sweep.report import COLUMNS, render, row_to_record, write
from gpibound.utils import format_value, log

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

CURVE_COLUMNS = ["rho", "gap", "bound_low", "bound_high"]


def _spec(args, rho=None):
    return MomentSpec(args.sigma1, args.sigma2, args.alpha1, args.alpha2,
                      args.rho if rho is None else rho)


def _emit_error(e: GPIError):
    record = {"error": type(e).__name__, "message": str(e), "exit_code": e.exit_code}
    print(json.dumps(record), file=sys.stderr)
    return e.exit_code


def cmd_moment(args):
    spec = _spec(args)
    exact = None
    if spec.degenerate:
        # X2 = ±X1: sigma1 = sigma2 is required whatever the method
        exact = product_moment_rho_one(spec)
    if exact is not None and math.isinf(exact):
        value, error = exact, 0.0
    elif args.method == "series":
        value, error = product_moment_series(spec)
    elif args.method == "quadrature":
        if spec.degenerate:
            est = quad_abs_moment_1d(spec.sigma1, spec.alpha1 + spec.alpha2)
        else:
            est = quad_product_moment(spec)
        value, error = est.value, est.error_estimate
    else:
        est = mc_product_moment(spec, McConfig(args.mc_samples, args.seed))
        value, error = est.value, est.error_estimate
    print(f"{value:.10g}")
    record = {
        "sigma1": spec.sigma1, "sigma2": spec.sigma2,
        "alpha1": spec.alpha1, "alpha2": spec.alpha2, "rho": spec.rho,
        "method": args.method, "value": format_value(value), "error_estimate": format_value(error),
    }
    print(json.dumps(record))
    return EXIT_OK


def cmd_gap(args):
    context = {'index': 0, 'spec': _spec(args), 'flags': []}
    for c in (CheckBounds(args.tolerance), BuildRow()):
        c.transform(context)
    report, row = context['report'], context['row']
    record = row_to_record(row)
    for key in ("index", "quadrature_value", "quadrature_error", "quadrature_deviation",
                "mc_value", "mc_error", "mc_deviation"):
        record.pop(key)
    print(json.dumps(record))
    if report.error is not None:
        return report.error_code or EXIT_NUMERICAL
    if not report.extends:
        # nothing is claimed at this point, so nothing is violated
        return EXIT_OK
    return EXIT_OK if row.satisfied else EXIT_VIOLATION


def cmd_verify(args):
    sweep_cls = PRESETS[args.preset]
    sweep = sweep_cls(
        alpha1_values=args.alpha1, alpha2_values=args.alpha2, rho_values=args.rho,
        sigma1_values=args.sigma1, sigma2_values=args.sigma2,
        tolerance=args.tolerance, oracle=args.oracle, mc_samples=args.mc_samples,
        master_seed=args.seed, output_format=args.format,
    )
    rows = sweep.run(args.jobs)
    write(render(rows, sweep.config.output_format.value), args.output)
    summary = sweep.summary(rows)
    log(f"Summary: {summary.format()}")
    return summary.exit_code


def curve_rows(args):
    if args.rho_count < 1:
        raise DomainError(f"rho-count must be positive, got {args.rho_count}")
    records = []
    for rho in np.linspace(0.0, 0.99, args.rho_count).tolist():
        report = check_point(_spec(args, rho), args.tolerance)
        if report.error is not None:
            error = DomainError if report.error_code == EXIT_INVALID else GPIError
            raise error(f"rho={rho}: {report.error}")
        bound = report.bound
        if isinstance(bound, SameSignBound):
            low, high = bound.value, None
        elif isinstance(bound, OppositeSignBounds):
            low, high = bound.lower, bound.upper
        else:
            low, high = 0.0, 0.0
        records.append({"rho": rho, "gap": report.gap, "bound_low": low, "bound_high": high})
    return records


def cmd_curve(args):
    records = [{k: format_value(v) for k, v in r.items()} for r in curve_rows(args)]
    frame = pd.DataFrame.from_records(records, columns=CURVE_COLUMNS)
    write(frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"), args.output)
    return EXIT_OK


def cmd_selftest(args):
    results = run_selftest(args.suite)
    if args.json:
        print(json.dumps([
            {"name": r.name, "passed": r.passed, "failed": r.failed, "worst": format_value(r.worst)}
            for r in results
        ]))
    else:
        for r in results:
            status = "ok" if r.ok else "FAILED"
            print(f"{r.name:<16} {status:<7} passed={r.passed} failed={r.failed} worst={r.worst:.3e}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_VIOLATION


def _add_spec_args(p, with_rho=True):
    p.add_argument("--alpha1", type=float, required=True)
    p.add_argument("--alpha2", type=float, required=True)
    if with_rho:
        p.add_argument("--rho", type=float, required=True)
    p.add_argument("--sigma1", type=float, default=1.0)
    p.add_argument("--sigma2", type=float, default=1.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gpibound",
        description="Absolute moments of bivariate Gaussians and bounds on the product-inequality gap.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment", help="E|X1|^a1 |X2|^a2 at one point")
    _add_spec_args(p)
    p.add_argument("--method", choices=["series", "quadrature", "montecarlo"], default="series")
    p.add_argument("--mc-samples", type=int, default=10 ** 6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_moment)

    p = sub.add_parser("gap", help="gap and bound check at one point")
    _add_spec_args(p)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(fn=cmd_gap)

    p = sub.add_parser(
        "verify", help="check the bounds over a grid",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Grid values are comma-separated numbers or start:stop:count ranges and\n"
               "override the preset.\n\nCSV columns: " + ", ".join(COLUMNS))
    p.add_argument("--preset", choices=sorted(PRESETS), default="full")
    for name in ("alpha1", "alpha2", "rho", "sigma1", "sigma2"):
        p.add_argument(f"--{name}", type=parse_values, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--oracle", choices=["none", "quadrature", "montecarlo", "both"], default=None)
    p.add_argument("--mc-samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("curve", help="gap and bounds over rho in [0, 0.99] as CSV")
    _add_spec_args(p, with_rho=False)
    p.add_argument("--rho-count", type=int, default=100)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_curve)

    p = sub.add_parser("selftest", help="run the identity suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except GPIError as e:
        return _emit_error(e)


if __name__ == "__main__":
    sys.exit(main())
