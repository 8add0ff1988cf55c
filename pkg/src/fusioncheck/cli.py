"""Command-line interface.

    fusioncheck [--tol X] validate FILE
    fusioncheck [--tol X] braid FILE [--starts N] [--seed S]
    fusioncheck [--tol X] ribbons FILE [--starts N] [--seed S]
    fusioncheck [--tol X] report FILE [--starts N] [--seed S] [--json OUT]
    fusioncheck catalog list
    fusioncheck catalog export NAME [-o OUT]
"""
from __future__ import annotations

import argparse
import json
import sys

from .catalog import CATALOG_NAMES, catalog_export, load_model
from .errors import FusionCheckError, ParseError, UnknownModel, ValidationError
from .numerics import DEFAULT_TOL
from .report import EXIT_COHERENCE, EXIT_IO, run_report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusioncheck", description=__doc__.split("\n\n")[0]
                                     or "fusion category verification")
    parser.add_argument("--tol", type=float, default=None, help="equality tolerance (default 1e-9)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="ring axioms, pentagon and F-unitarity")
    p.add_argument("file")
    for verb, text in (("braid", "enumerate braidings"),
                       ("ribbons", "braidings plus ribbon structures"),
                       ("report", "the full pipeline")):
        p = sub.add_parser(verb, help=text)
        p.add_argument("file")
        p.add_argument("--starts", type=int, default=64)
        p.add_argument("--seed", type=int, default=0)
        if verb == "report":
            p.add_argument("--json", metavar="OUT", default=None,
                           help="write the JSON report to OUT ('-' for stdout)")
        else:
            p.add_argument("--json", action="store_const", const="-", default=None,
                           help="print JSON instead of text")

    cat = sub.add_parser("catalog", help="embedded model catalog")
    cat_sub = cat.add_subparsers(dest="catalog_command", required=True)
    cat_sub.add_parser("list")
    exp = cat_sub.add_parser("export")
    exp.add_argument("name")
    exp.add_argument("-o", "--output", default=None)
    return parser


def _catalog(args) -> int:
    if args.catalog_command == "list":
        for name in CATALOG_NAMES:
            print(name)
        return 0
    try:
        text = json.dumps(catalog_export(args.name), indent=2) + "\n"
    except UnknownModel as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "catalog":
        return _catalog(args)

    try:
        tol = DEFAULT_TOL if args.tol is None else DEFAULT_TOL.with_eq_tol(args.tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        model = load_model(args.file, tol)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationError as exc:
        print(f"invalid model: {exc}", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
        return EXIT_COHERENCE
    except FusionCheckError as exc:
        print(f"invalid model: {exc}", file=sys.stderr)
        return EXIT_COHERENCE

    starts = getattr(args, "starts", 64)
    seed = getattr(args, "seed", 0)
    report = run_report(model, starts=starts, seed=seed, tol=tol, stages=args.command)
    out = getattr(args, "json", None)
    if out is None:
        sys.stdout.write(report.to_text())
    elif out == "-":
        sys.stdout.write(report.to_json())
    else:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(report.to_json())
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        sys.stdout.write(report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
