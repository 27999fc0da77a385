"""``qtchain`` command line.

Exit codes: 0 success, 1 a verified property failed, 2 usage error,
3 bad input (unreadable or malformed file, table outside a precondition).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import census, core, nary, pathform, render, verify
from .errors import (
    BijectionFailure,
    BoundExceeded,
    FormatError,
    InternalContradiction,
    InvalidPath,
    Mismatch,
    OutOfRange,
    PathSyntaxError,
    PreconditionFailed,
    QtChainError,
    ShapeMismatch,
    UnrepresentableValue,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _table(args) -> core.BinaryOpTable:
    return core.load_table(_read(args.table))


def _print(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --------------------------------------------------------------------------
# commands


def cmd_props(args) -> int:
    report = core.analyze(_table(args))
    _print(report.to_json() if args.json else report.to_text())
    return EXIT_OK


def cmd_decompose(args) -> int:
    D = pathform.decompose(_table(args))
    _print(pathform.to_json(D) if args.json else pathform.format_path_spec(D))
    return EXIT_OK


def cmd_synthesize(args) -> int:
    F = pathform.reconstruct(pathform.parse_path_spec(args.spec))
    _print(core.table_to_json(F) if args.json else core.format_table_text(F))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.limit is not None and args.limit < 0:
        raise UsageError("--limit must be >= 0")
    filt = census.EnumFilter.parse(args.filter or "")
    tables = census.enumerate_filtered(args.k, filt)
    if args.limit is not None:
        tables = tables[: args.limit]
    if args.format == "json":
        _print(json.dumps([F.to_list() for F in tables]))
        return EXIT_OK
    out = sys.stdout
    for i, F in enumerate(tables):
        if i:
            out.write("\n")
        out.write(core.format_table_text(F))
        out.flush()
    return EXIT_OK


def cmd_count(args) -> int:
    table = census.count_table(args.kmax)
    _print({"text": table.to_text, "json": table.to_json, "csv": table.to_csv}[args.format]())
    return EXIT_OK


def cmd_verify(args) -> int:
    failed = 0
    for result in verify.run_checks(args.kmax, tuple(args.only or ())):
        print(result.line(), flush=True)
        failed += not result.ok
    return EXIT_FAILED if failed else EXIT_OK


def cmd_render(args) -> int:
    F = _table(args)
    D = None
    if args.path:
        D = pathform.parse_path_spec(args.path)
        if pathform.reconstruct(D) != F:
            raise PreconditionFailed("the path does not describe this table")
    elif args.decompose:
        D = pathform.decompose(F)
    if args.format == "svg":
        sys.stdout.write(render.render_svg(F, D, cell_size=args.cell_size))
    else:
        sys.stdout.write(render.render_ascii(F, D))
    return EXIT_OK


def _nary_table(args) -> nary.NAryOpTable:
    return nary.load_nary(_read(args.table))


def cmd_nary_derive(args) -> int:
    F = nary.derive(_table(args), args.n)
    _print(nary.nary_to_json(F) if args.json else nary.format_nary_text(F))
    return EXIT_OK


def cmd_nary_reduce(args) -> int:
    result = nary.reduce(_nary_table(args))
    if isinstance(result, nary.Reduced):
        _print(core.table_to_json(result.G) if args.json else core.format_table_text(result.G))
        return EXIT_OK
    if args.json:
        _print(json.dumps({"reducible": False, "reason": result.reason, "witness": [list(w) for w in result.witness]}))
    else:
        _print(f"not reducible: {result.reason}; witness {result.witness}")
    return EXIT_FAILED


def cmd_nary_props(args) -> int:
    F = _nary_table(args)
    checks = {
        "idempotent": nary.find_nary_non_idempotent(F),
        "quasitrivial": nary.find_nary_non_quasitrivial(F),
        "nondecreasing": nary.find_nary_non_nondecreasing(F),
        "monotone": nary.find_nary_non_monotone(F),
        "associative": nary.find_nary_non_associative(F),
        "bisymmetric": nary.find_nary_non_bisymmetric(F),
    }
    report = {"n": F.n, "k": F.k}
    report.update({name: w is None for name, w in checks.items()})
    report["neutral"] = nary.nary_neutral_element(F)
    witnesses = [w for w in checks.values() if w is not None]
    if args.json:
        report["witnesses"] = [{"property": w.property, "args": [list(a) for a in w.args], "position": w.position} for w in witnesses]
        _print(json.dumps(report, indent=2))
    else:
        lines = [f"{name:<20}{core._fmt(value)}" for name, value in report.items()]
        lines += [f"{'witness':<20}{w.property} {w.args}" for w in witnesses]
        _print("\n".join(lines))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qtchain", description="Quasitrivial monotone operations on finite chains.")
    sub = p.add_subparsers(dest="command", required=True)

    def table_arg(sp, required=True):
        sp.add_argument("--table", required=required, metavar="FILE|-", help="table file (text or JSON); '-' for stdin")

    sp = sub.add_parser("props", help="property report of a binary table")
    table_arg(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_props)

    sp = sub.add_parser("decompose", help="path form of an associative quasitrivial nondecreasing table")
    table_arg(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("synthesize", help="table of a path spec such as 'k=6; R D Gx R'")
    sp.add_argument("spec")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_synthesize)

    sp = sub.add_parser("enumerate", help="list quasitrivial nondecreasing tables")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--filter", default="", metavar="assoc,bisym,sym,neutral")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--limit", type=int)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("count", help="exact counts A_k, B_k, C_k, D_k")
    sp.add_argument("--kmax", type=_positive, default=10)
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("verify", help="exhaustive theorem checks up to --kmax")
    sp.add_argument("--kmax", type=_positive, default=5)
    sp.add_argument("--only", nargs="+", choices=[tag for tag, _ in verify.CHECKS], metavar="TAG")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("render", help="contour plot as ASCII or SVG")
    table_arg(sp)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--path", metavar="SPEC", help="overlay this path spec")
    group.add_argument("--decompose", action="store_true", help="overlay the table's own path")
    sp.add_argument("--format", choices=("text", "svg"), default="text")
    sp.add_argument("--cell-size", type=_positive, default=32)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("nary", help="n-ary operations")
    nsub = sp.add_subparsers(dest="nary_command", required=True)
    s = nsub.add_parser("derive", help="n-ary fold of an associative binary table")
    table_arg(s)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_nary_derive)
    s = nsub.add_parser("reduce", help="binary table whose fold is the n-ary table")
    table_arg(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_nary_reduce)
    s = nsub.add_parser("props", help="n-ary property report")
    table_arg(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_nary_props)
    return p


_INPUT_ERRORS = (FormatError, ShapeMismatch, OutOfRange, PathSyntaxError, InvalidPath, PreconditionFailed, UnrepresentableValue)
_FAILURES = (Mismatch, BijectionFailure, InternalContradiction)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, BoundExceeded, ValueError) as exc:
        print(f"qtchain: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _INPUT_ERRORS as exc:
        print(f"qtchain: {type(exc).__name__}: {exc}", file=sys.stderr)
        w = getattr(exc, "witness", None)
        if w is not None:
            print(f"qtchain: witness {w}", file=sys.stderr)
        return EXIT_INPUT
    except _FAILURES as exc:
        print(f"qtchain: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except QtChainError as exc:
        print(f"qtchain: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
