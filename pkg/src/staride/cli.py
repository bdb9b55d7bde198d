"""Command line entry point: ``staride run-example``, ``staride check``, ``staride suite``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .dsl import ParseError
from .verdict import Bounds, InputError, PreconditionError, RepresentationError


def _bounds(args) -> Bounds | None:
    if args.degree_bound is None and args.family_window is None and args.seed is None:
        return None
    d = Bounds()
    return Bounds(
        degree=d.degree if args.degree_bound is None else args.degree_bound,
        window=d.window if args.family_window is None else args.family_window,
        seed=d.seed if args.seed is None else args.seed,
    )


def _emit(reports, args) -> int:
    out = sys.stdout
    if args.report == "json":
        if len(reports) == 1:
            out.write(harness.dumps(reports[0], args.timings))
        else:
            import json

            doc = [r.to_json(args.timings) for r in reports]
            out.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write("\n\n".join(r.to_text(args.timings) for r in reports) + "\n")
    codes = [r.exit_code for r in reports]
    if 1 in codes:
        return 1
    return max(codes, default=0)


def _add_common(p):
    p.add_argument("--degree-bound", type=int, default=None, metavar="N")
    p.add_argument("--family-window", type=int, default=None, metavar="W")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report", choices=("json", "text"), default="text")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte determinism)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="staride", description="Star-operation checks on monoid rings.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("run-example", help="run a shipped worked example")
    p.add_argument("which", choices=("3.1", "3.2"))
    _add_common(p)

    p = sub.add_parser("check", help="run the assertions of a scenario file")
    p.add_argument("file")
    _add_common(p)

    p = sub.add_parser("suite", help="run property suites over a fixture file")
    p.add_argument("name", choices=("props",))
    p.add_argument("--fixtures", default=None, help="fixture file (default: the shipped fixtures)")
    _add_common(p)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        bounds = _bounds(args)
        if args.cmd == "run-example":
            ast = harness.load_example(args.which)
            reports = [harness.run_scenario(harness.build(ast, bounds))]
        elif args.cmd == "check":
            path = Path(args.file)
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as e:
                raise InputError(f"cannot read {path}: {e.strerror}") from None
            reports = harness.check_text(text, str(path), bounds)
        else:
            if args.fixtures:
                path = Path(args.fixtures)
                try:
                    text, fname = path.read_text(encoding="utf-8"), str(path)
                except OSError as e:
                    raise InputError(f"cannot read {path}: {e.strerror}") from None
            else:
                text, fname = harness.shipped("fixtures.stx"), "fixtures.stx"
            reports = [harness.run_suites(text, fname, bounds)]
    except ParseError as e:
        for d in e.diagnostics:
            print(str(d), file=sys.stderr)
        return 3
    except (InputError, PreconditionError, RepresentationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    return _emit(reports, args)


if __name__ == "__main__":
    sys.exit(main())
