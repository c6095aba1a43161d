"""Command-line client: reads files, builds the same request models the HTTP
service accepts, dispatches to the handlers in process, renders the report.

Exit codes: 0 all verdicts pass, 1 at least one verdict fails, 2 input or
usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import FormatError, SizeLimitError, ToolkitError
from .handlers import HANDLERS
from .reports import exit_code, render_json, render_text
from .schemas import (
    BandRequest,
    CheckMorphismRequest,
    EnumerateBandsRequest,
    EpiclassRequest,
    PretorsionRequest,
    ProductRequest,
    Report,
    ValidateRequest,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsionkit",
        description="Exhaustive verification of torsion pairs and related structure on finite categories.",
    )
    parser.add_argument("--json", action="store_true", help="emit the machine-readable report")
    parser.add_argument("--no-timing", action="store_true", help="omit timing for byte-identical reports")
    parser.add_argument("--max-objects", type=int, default=None, help="object bound for exhaustive checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the category laws of a .fincat file")
    p.add_argument("catfile")

    p = sub.add_parser("product", help="form the product of category files")
    p.add_argument("catfiles", nargs="+")
    p.add_argument("--emit", action="store_true", help="include the product category text in the report")

    for name in ("check-pretorsion", "check-rectangular", "characterize", "check-pseudoalgebra", "roundtrip"):
        p = sub.add_parser(name)
        p.add_argument("catfile")
        p.add_argument("--torsion", required=True, help="object subset name for the torsion class")
        p.add_argument("--free", required=True, help="object subset name for the torsion-free class")

    p = sub.add_parser("check-morphism", help="check a functor between two torsion pairs")
    p.add_argument("source_catfile")
    p.add_argument("target_catfile")
    p.add_argument("mapfile")
    p.add_argument("--source-torsion", required=True)
    p.add_argument("--source-free", required=True)
    p.add_argument("--target-torsion", required=True)
    p.add_argument("--target-free", required=True)

    p = sub.add_parser("check-band", help="check the band laws of a .band file")
    p.add_argument("bandfile")

    p = sub.add_parser("decompose-band", help="left-zero x right-zero decomposition")
    p.add_argument("bandfile")

    p = sub.add_parser("enumerate-bands", help="scan all tables of a given size")
    p.add_argument("--size", type=int, required=True)

    p = sub.add_parser("check-epiclass", help="torsion-class analysis of a class of epimorphisms")
    p.add_argument("catfile")
    p.add_argument("--class", dest="subset", default=None, help="morphism subset name (explicit mode)")
    p.add_argument(
        "--mode",
        choices=["explicit", "projections", "split", "regular", "minimal"],
        default="explicit",
    )
    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError("unreadable_file", f"cannot read {path}: {e}", {"path": path}) from e


def _build_request(args: argparse.Namespace):
    common = {"timing": not args.no_timing, "max_objects": args.max_objects}
    cmd = args.command
    if cmd == "validate":
        return ValidateRequest(category_text=_read(args.catfile), **common)
    if cmd == "product":
        return ProductRequest(category_texts=[_read(f) for f in args.catfiles], emit=args.emit, **common)
    if cmd in ("check-pretorsion", "check-rectangular", "characterize", "check-pseudoalgebra", "roundtrip"):
        return PretorsionRequest(
            category_text=_read(args.catfile), torsion_subset=args.torsion, free_subset=args.free, **common
        )
    if cmd == "check-morphism":
        return CheckMorphismRequest(
            source_text=_read(args.source_catfile),
            target_text=_read(args.target_catfile),
            functor_text=_read(args.mapfile),
            source_torsion=args.source_torsion,
            source_free=args.source_free,
            target_torsion=args.target_torsion,
            target_free=args.target_free,
            **common,
        )
    if cmd in ("check-band", "decompose-band"):
        return BandRequest(band_text=_read(args.bandfile), **common)
    if cmd == "enumerate-bands":
        return EnumerateBandsRequest(size=args.size, **common)
    if cmd == "check-epiclass":
        return EpiclassRequest(
            category_text=_read(args.catfile), subset=args.subset, mode=args.mode, **common
        )
    raise FormatError("unknown_command", f"unknown command {cmd!r}", {})


def _command_echo(args: argparse.Namespace, argv: list[str]) -> list[str]:
    return [args.command] + [a for a in argv if a != args.command]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        request = _build_request(args)
        _, handler = HANDLERS[args.command]
        report: Report = handler(request)
    except (FormatError, SizeLimitError) as e:
        report = Report(command=_command_echo(args, argv), result="error", witnesses={"input": e.as_dict()})
        sys.stdout.write(render_json(report) if args.json else render_text(report))
        return 2
    except ToolkitError as e:
        report = Report(command=_command_echo(args, argv), result="error", witnesses={"internal": e.as_dict()})
        sys.stdout.write(render_json(report) if args.json else render_text(report))
        return 2
    report.command = _command_echo(args, argv)
    sys.stdout.write(render_json(report) if args.json else render_text(report))
    return exit_code(report)


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
