"""Command-line entry point: ``negchan report | sweep | verify``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or config error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .report import format_report, run_report
from .scenario import ConfigError, load_scenario
from .sweep import parse_range, run_sweep, write_csv, write_svg
from .verify import run_verify


def _range(text: str):
    try:
        return parse_range(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="negchan", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", help="Choi matrix, spectrum and negativity for one scenario")
    r.add_argument("--scenario", required=True, metavar="FILE")
    r.add_argument("--json", action="store_true", help="emit the report as JSON")

    s = sub.add_parser("sweep", help="negativity over a (k, t) grid")
    s.add_argument("--scenario", required=True, metavar="FILE")
    s.add_argument("--k", required=True, type=_range, metavar="MIN:MAX:N")
    s.add_argument("--t", required=True, type=_range, metavar="MIN:MAX:N")
    s.add_argument("--out", required=True, metavar="FILE", help="CSV output path")
    s.add_argument("--svg", metavar="FILE", help="optional grayscale heatmap")
    s.add_argument("--pipeline", choices=("analytic", "numeric"), default="analytic")
    s.add_argument("--threads", type=int, help="worker threads (default: NEGCHAN_THREADS or CPU count)")

    sub.add_parser("verify", help="run the built-in verification suite")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            doc = run_report(load_scenario(args.scenario))
            print(json.dumps(doc, indent=2) if args.json else format_report(doc))
            return 0
        if args.command == "sweep":
            res = run_sweep(load_scenario(args.scenario), args.k, args.t, args.pipeline, args.threads)
            write_csv(res, args.out)
            if args.svg:
                write_svg(res, args.svg)
            print(f"wrote {res.eta.size} cells to {args.out}; max eta = {res.eta.max():.6f}")
            return 0
        results = run_verify()
        for r in results:
            print(r.line())
        failed = sum(not r.passed for r in results)
        print(f"{len(results) - failed}/{len(results)} checks passed")
        return 1 if failed else 0
    except (ConfigError, ValueError, OSError) as e:
        print(f"negchan: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
