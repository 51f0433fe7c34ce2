"""Command-line entry point: ``biframe analyze | paper-examples | properties``."""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .exceptions import NumericalInconsistencyError, ScenarioError
from .properties import run_property_suite
from .report import EXIT_NUMERICAL, EXIT_USAGE, RunReport
from .scenario import run_scenario
from .worked_examples import run_paper_examples


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not np.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive and finite, got {text!r}")
    return value


def _global_options():
    # Defaults are suppressed so the flags work before or after the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--tolerance-parseval", type=_positive_float, default=argparse.SUPPRESS,
                   metavar="TOL", help="threshold on ||T - I|| for the Parseval verdict")
    g.add_argument("--tolerance-positivity", type=_positive_float, default=argparse.SUPPRESS,
                   metavar="TOL", help="threshold on the lower bound for the biframe verdict")
    g.add_argument("--report", default=argparse.SUPPRESS, metavar="PATH",
                   help="also write the machine-readable JSON report to PATH")
    g.add_argument("--strict-paper", action="store_true", default=argparse.SUPPRESS,
                   help="treat mismatches with published claims as failures")
    g.add_argument("--parallel", action="store_true", default=argparse.SUPPRESS,
                   help="run independent scenarios or invariants concurrently")
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="print the JSON report instead of the text report")
    g.add_argument("--timings", action="store_true", default=argparse.SUPPRESS,
                   help="include elapsed times in the JSON report (breaks byte-identity)")
    return common


def build_parser():
    common = _global_options()
    parser = argparse.ArgumentParser(
        prog="biframe",
        description="Numerical checks for continuous biframes in finite dimensions.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("analyze", parents=[common], help="run one or more scenario files")
    p.add_argument("files", nargs="+", metavar="FILE")

    sub.add_parser("paper-examples", parents=[common], help="run the built-in worked-example fixtures")

    p = sub.add_parser("properties", parents=[common], help="run the seeded invariant suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-dim", type=int, default=8, dest="max_dim")
    return parser


def _options(args):
    get = lambda name, default: getattr(args, name, default)  # noqa: E731
    overrides = {}
    if get("tolerance_parseval", None) is not None:
        overrides["parseval"] = args.tolerance_parseval
    if get("tolerance_positivity", None) is not None:
        overrides["positivity"] = args.tolerance_positivity
    return {
        "overrides": overrides,
        "strict": get("strict_paper", False),
        "parallel": get("parallel", False),
        "json": get("json", False),
        "timings": get("timings", False),
        "report": get("report", None),
    }


def _analyze(files, opts):
    def one(path):
        return run_scenario(path, opts["strict"], opts["overrides"])

    if opts["parallel"] and len(files) > 1:
        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(one, files))
    else:
        reports = [one(path) for path in files]
    if len(reports) == 1:
        return reports[0]
    combined = RunReport(title="analyze " + " ".join(files), strict_claims=opts["strict"])
    for r in reports:
        combined.extend(r)
    return combined


def _emit(report, opts, out):
    if opts["json"]:
        out.write(report.to_json(include_timing=opts["timings"]))
    else:
        out.write(report.to_text())
    if opts["report"]:
        with open(opts["report"], "w", encoding="utf-8") as fh:
            fh.write(report.to_json(include_timing=opts["timings"]))


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    opts = _options(args)

    try:
        if args.command == "analyze":
            report = _analyze(args.files, opts)
        elif args.command == "paper-examples":
            report = run_paper_examples(opts["strict"], opts["overrides"])
        else:
            try:
                report = run_property_suite(args.seed, args.trials, args.max_dim, parallel=opts["parallel"])
            except ValueError as exc:
                err.write(f"biframe properties: error: {exc}\n")
                return EXIT_USAGE
    except ScenarioError as exc:
        err.write(f"biframe: error: {exc}\n")
        return EXIT_USAGE
    except (NumericalInconsistencyError, np.linalg.LinAlgError) as exc:
        err.write(f"biframe: numerical failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERICAL

    try:
        _emit(report, opts, out)
    except OSError as exc:
        err.write(f"biframe: error: cannot write report: {exc}\n")
        return EXIT_USAGE
    for check in report.checks:
        if check.message and check.op == "property":
            err.write(f"{check.name}: {check.message}\n")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
