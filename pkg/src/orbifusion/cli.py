"""Command-line surface.  Thin adapters only; all logic lives in the library.

Exit codes: 0 success, 2 parse error, 3 precondition, 4 guard exceeded,
5 verification failure.  Rationals are printed as "p/q" strings and label
lists are ordered by their text grammar, so output is byte-stable per seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import codes, fusion, lattices, quadspace, verlinde
from .errors import OrbifusionError, ParseError, VerificationError
from .registry import label_text, parse_label, registry


def _load_code(spec: str) -> codes.LinearCode:
    if spec.startswith("builtin:"):
        return codes.builtin(spec[len("builtin:"):])
    if spec.startswith("file:"):
        spec = spec[len("file:"):]
    try:
        return codes.load_code(spec)
    except OSError:
        raise ParseError(f"cannot read code file {spec!r}") from None


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(payload, args):
    if getattr(args, "format", "json") == "csv" and isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(_jsonable(payload), indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_pair_args(p):
    p.add_argument("--c", required=True, help="F4 code: builtin:<name> or file path")
    p.add_argument("--d", required=True, help="F3 code: builtin:<name> or file path")
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="orbifusion")
    sub = top.add_subparsers(dest="command", required=True)

    code = sub.add_parser("code", help="code inspection")
    code_sub = code.add_subparsers(dest="subcommand", required=True)
    info = code_sub.add_parser("info")
    group = info.add_mutually_exclusive_group(required=True)
    group.add_argument("--builtin")
    group.add_argument("--file")
    info.add_argument("--out", default=None)

    modules = sub.add_parser("modules", help="module labels")
    modules_sub = modules.add_subparsers(dest="subcommand", required=True)
    mlist = modules_sub.add_parser("list")
    _add_pair_args(mlist)

    fuse_p = sub.add_parser("fuse", help="fuse two labels")
    _add_pair_args(fuse_p)
    fuse_p.add_argument("--a", required=True)
    fuse_p.add_argument("--b", required=True)

    table = sub.add_parser("table", help="full fusion table")
    _add_pair_args(table)
    table.add_argument("--format", choices=("json", "csv"), default="json")

    verify = sub.add_parser("verify", help="run the verification suite")
    _add_pair_args(verify)
    verify.add_argument("--mode", default="full",
                        help="full or sampled:<n>")
    verify.add_argument("--seed", type=int, default=0)

    quad = sub.add_parser("quadspace", help="quadratic-space report")
    quad.add_argument("--out", default=None)

    verl = sub.add_parser("verlinde", help="twisted S-matrix cross-check")
    verl.add_argument("--ell", type=int, required=True)
    verl.add_argument("--d", type=int, required=True)
    verl.add_argument("--out", default=None)

    return top


def cmd_code_info(args):
    if args.builtin:
        c = codes.builtin(args.builtin)
    else:
        c = _load_code(args.file)
    _emit(codes.code_info(c), args)
    return 0


def cmd_modules(args):
    reg = registry(_load_code(args.c), _load_code(args.d))
    payload = {
        "labelCount": len(reg.modules()),
        "globalDimension": reg.glob_dimension(),
        "labels": [
            {"label": label_text(m),
             "qdim": reg.qdim(m),
             "weightMod1": reg.weight_mod1(m),
             "dual": label_text(reg.contragredient(m))}
            for m in reg.modules()
        ],
    }
    _emit(payload, args)
    return 0


def cmd_fuse(args):
    C, D = _load_code(args.c), _load_code(args.d)
    reg = registry(C, D)
    a = reg.validate(parse_label(args.a))
    b = reg.validate(parse_label(args.b))
    result = fusion.fuse(a, b, C, D)
    _emit([{"label": label_text(l), "mult": m} for l, m in result], args)
    return 0


def cmd_table(args):
    C, D = _load_code(args.c), _load_code(args.d)
    if args.format == "csv":
        _emit(fusion.fusion_table_csv(C, D), args)
    else:
        _emit(fusion.fusion_table(C, D), args)
    return 0


def cmd_verify(args):
    C, D = _load_code(args.c), _load_code(args.d)
    report = fusion.verify_suite(C, D, mode=args.mode, seed=args.seed)
    _emit(report.to_json(), args)
    return 0 if report.passed else VerificationError.exit_code


def cmd_quadspace(args):
    _emit(quadspace.quadspace_report(), args)
    return 0


def cmd_verlinde(args):
    _emit(verlinde.report(args.ell, args.d), args)
    return 0


_HANDLERS = {
    ("code", "info"): cmd_code_info,
    ("modules", "list"): cmd_modules,
    ("fuse", None): cmd_fuse,
    ("table", None): cmd_table,
    ("verify", None): cmd_verify,
    ("quadspace", None): cmd_quadspace,
    ("verlinde", None): cmd_verlinde,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handler = _HANDLERS[(args.command, getattr(args, "subcommand", None))]
    try:
        return handler(args)
    except OrbifusionError as exc:
        kind = {2: "parse", 3: "precondition", 4: "guard", 5: "verification"}
        tag = kind.get(exc.exit_code, "error")
        msg = str(exc)
        line = msg if msg.startswith(f"{tag}:") else f"{tag}: {msg}"
        print(f"error: {line}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
