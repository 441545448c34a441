"""Command line front end.

Subcommands:
    list            show built-in scenarios
    run             run a verification suite, emit a JSON report
    curve           emit an expansion error curve (CSV plus a PNG figure)
    takeda-coeffs   print the exact alpha/beta coefficient table as CSV

Exit codes: 0 success, 1 check failures, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import suites
from .scenarios import BUILTIN_SUMMARIES, SchemaError, builtin_names, load_scenario
from .series import takeda_coefficients


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adwlab",
        description="Verification lab for damped-wave asymptotic expansions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list built-in scenarios")

    run = sub.add_parser("run", help="run a verification suite on a scenario")
    run.add_argument("scenario", help="built-in name or path to a scenario JSON file")
    run.add_argument("--suite", default="all",
                     choices=("all",) + suites.SUITES,
                     help="which check suite to run (default: all)")
    run.add_argument("--m", type=int, default=None, dest="m_max",
                     help="override the scenario expansion depth (0..8)")
    run.add_argument("--threads", type=int, default=None,
                     help=f"worker threads (default: ${suites.THREADS_ENV} or 1)")
    run.add_argument("--out", default=None,
                     help="write the JSON report here instead of stdout")

    curve = sub.add_parser("curve", help="emit an expansion error curve")
    curve.add_argument("scenario", help="built-in name or path to a scenario JSON file")
    curve.add_argument("--m", type=int, required=True,
                       help="expansion order for the error curve (0..8)")
    curve.add_argument("--out", default="error_curve.csv",
                       help="CSV output path (default: error_curve.csv)")
    curve.add_argument("--no-plot", action="store_true",
                       help="skip the PNG figure next to the CSV")

    tak = sub.add_parser("takeda-coeffs",
                         help="print exact expansion coefficient tables as CSV")
    tak.add_argument("--jmax", type=int, default=4, help="max row index (default 4)")
    tak.add_argument("--kmax", type=int, default=4, help="max column index (default 4)")
    tak.add_argument("--out", default=None,
                     help="write the CSV here instead of stdout")
    return parser


def _cmd_list() -> int:
    for name in builtin_names():
        print(f"{name:<16} {BUILTIN_SUMMARIES[name]}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    report = suites.run_verification_suite(
        scenario, suite=args.suite, m_max=args.m_max, threads=args.threads
    )
    text = suites.render_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        summary = report["summary"]
        print(f"{report['scenario']}: {summary['passed']}/{summary['total']} "
              f"checks passed -> {args.out}")
    else:
        sys.stdout.write(text)
    return suites.report_exit_code(report)


def _cmd_curve(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    rows = suites.emit_error_curve(scenario, args.m, args.out)
    print(f"wrote {len(rows)} samples -> {args.out}")
    if not args.no_plot:
        from . import plotting

        root, _ = os.path.splitext(args.out)
        png_path = root + ".png"
        plotting.save_error_curve_figure(rows, args.m, scenario.name, png_path)
        print(f"wrote figure -> {png_path}")
    return 0


def _cmd_takeda(args: argparse.Namespace) -> int:
    if args.jmax < 0 or args.kmax < 0:
        raise ValueError("--jmax and --kmax must be nonnegative")
    table = takeda_coefficients(args.jmax, args.kmax)
    text = table.render_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote coefficient table -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            return _cmd_list()
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "curve":
            return _cmd_curve(args)
        if args.command == "takeda-coeffs":
            return _cmd_takeda(args)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
