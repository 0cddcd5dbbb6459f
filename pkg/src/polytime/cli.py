"""``polytime`` command-line front end.

Exit codes: 0 on success, 1 for any user or input error, 2 when a checked
Cobham run exceeds a recursion bound.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from . import bellantoni as B
from . import binf as I
from . import cobham as C
from .bitstring import parse_literal, render_literal
from .errors import BoundViolation, IllFormed, InferenceError, PolytimeError
from .mpoly import print_canonical
from .syntax import Program, normalize_class, parse_source, to_source
from .translate import b_to_c, c_to_b_closed, pol_c_to_b

EXIT_OK, EXIT_USER, EXIT_BOUND = 0, 1, 2


class UsageError(PolytimeError):
    pass


def _load(path: str, cls: str) -> Program:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_source(text, cls)


def _main_expr(program: Program):
    if program.main is None:
        raise UsageError("no expression")
    return program.main


def _diagnose(program: Program, exc: IllFormed) -> str:
    loc = program.location_of(exc.term) if exc.term is not None else None
    return f"{loc}: {exc}" if loc is not None else str(exc)


def _check_all(program: Program):
    """Arity-check every definition and the main expression; returns the main arity."""
    check = C.arity_c if program.cls == "C" else B.arity_b
    try:
        if program.cls == "B_inf":
            for name, _, e in program.defs:
                try:
                    I.infer(e)
                except InferenceError as exc:
                    raise UsageError(f"in definition {name}: {exc}") from None
            return B.arity_b(I.infer(_main_expr(program)))
        for _, _, e in program.defs:
            check(e)
        return check(_main_expr(program))
    except IllFormed as exc:
        raise UsageError(_diagnose(program, exc)) from None


def _annotated(program: Program):
    """Main expression as a C or B term (B_inf is inferred first)."""
    e = _main_expr(program)
    if program.cls == "B_inf":
        return I.infer(e)
    try:
        (C.arity_c if program.cls == "C" else B.arity_b)(e)
    except IllFormed as exc:
        raise UsageError(_diagnose(program, exc)) from None
    return e


def _literals(text: Optional[str]):
    if text is None or text.strip() == "":
        return ()
    return tuple(parse_literal(part.strip()) for part in text.split(","))


def _write(path: Optional[str], text: str, out):
    if path is None:
        print(text, file=out)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _format_arity(a) -> str:
    return f"arity: {a}"


# ---------------------------------------------------------------- commands


def cmd_check(args, out, err) -> int:
    program = _load(args.file, args.cls)
    print(_format_arity(_check_all(program)), file=out)
    return EXIT_OK


def cmd_arity(args, out, err) -> int:
    program = _load(args.file, args.cls)
    main_arity = _check_all(program)

    def arity(e):
        if program.cls == "C":
            return C.arity_c(e)
        return B.arity_b(I.infer(e) if program.cls == "B_inf" else e)

    for name, _, e in program.defs:
        print(f"{name}: {arity(e)}", file=out)
    print(f"main: {main_arity}", file=out)
    return EXIT_OK


def cmd_run(args, out, err) -> int:
    program = _load(args.file, args.cls)
    e = _annotated(program)
    if program.cls == "C":
        if args.normal is not None or args.safe is not None:
            raise UsageError("class C takes --args, not --normal/--safe")
        if args.time:
            raise UsageError("--time is only available for class B")
        values = _literals(args.args)
        if args.checked:
            try:
                result = C.eval_c_checked(e, values)
            except BoundViolation as exc:
                print(f"bound violation: {exc}", file=err)
                return EXIT_BOUND
        else:
            result = C.eval_c(e, values)
        print(render_literal(result), file=out)
        return EXIT_OK
    if args.args is not None:
        raise UsageError("class B takes --normal/--safe, not --args")
    if args.checked:
        raise UsageError("--checked is only available for class C")
    normals, safes = _literals(args.normal), _literals(args.safe)
    if args.time:
        value, cost = B.eval_b_timed(e, normals, safes)
        print(render_literal(value), file=out)
        print(f"cost: {cost}", file=out)
    else:
        print(render_literal(B.eval_b(e, normals, safes)), file=out)
    return EXIT_OK


def cmd_bound(args, out, err) -> int:
    program = _load(args.file, args.cls)
    e = _annotated(program)
    if program.cls == "C":
        if args.kind != "length":
            raise UsageError(f"--kind {args.kind} is only available for class B")
        print(print_canonical(C.pol_c(e)), file=out)
    elif args.kind == "length":
        print(print_canonical(B.pol_b(e)), file=out)
    elif args.kind == "time":
        print(print_canonical(B.pol_time(e)), file=out)
    else:
        size, time = B.ppt_envelope(e)
        print(f"size: {size}", file=out)
        print(f"time: {time}", file=out)
    return EXIT_OK


def cmd_translate(args, out, err) -> int:
    src = normalize_class(args.source)
    dst = normalize_class(args.target)
    if args.cls is not None and normalize_class(args.cls) != src:
        raise UsageError(f"--class {args.cls} does not match --from {args.source}")
    program = _load(args.file, src)
    e = _annotated(program)
    # reports go to stderr when stdout carries the translated term
    report = out if args.output else err
    if src == "C" and dst == "B":
        result = c_to_b_closed(e)
        B.arity_b(result)
        print(
            "warning: RecBounded is assumed for the source; it is only checked dynamically (run --checked)",
            file=err,
        )
        print(f"size: {B.node_count(result)}", file=report)
        print(f"padding bound: {print_canonical(pol_c_to_b(e))}", file=report)
    elif src in ("B", "B_inf") and dst == "C":
        result = b_to_c(e)
        C.arity_c(result)
        print(f"size: {C.node_count(result)}", file=report)
    else:
        raise UsageError(f"unsupported translation {args.source} -> {args.target}")
    _write(args.output, to_source(result), out)
    return EXIT_OK


def _floor(text: Optional[str]):
    if text is None:
        return None
    try:
        n, s = (int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"--floor expects 'n,s', got {text!r}") from None
    if n < 0 or s < 0:
        raise UsageError("--floor values must be nonnegative")
    return n, s


def cmd_infer(args, out, err) -> int:
    program = _load(args.file, "B_inf")
    e = _main_expr(program)
    try:
        annotated = I.infer(e, _floor(args.floor))
    except InferenceError as exc:
        loc = program.location_of(e)
        raise UsageError(f"{loc}: {exc}" if loc else str(exc)) from None
    report = out if args.output else err
    print(_format_arity(B.arity_b(annotated)), file=report)
    _write(args.output, to_source(annotated), out)
    return EXIT_OK


# ---------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polytime",
        description="Check, run, bound and translate Cobham (C) and Bellantoni-Cook (B) programs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(p, need_class=True):
        p.add_argument("file", help="program source file")
        if need_class:
            p.add_argument("--class", dest="cls", required=True, help="c, b or binf")
        return p

    with_file(sub.add_parser("check", help="arity-check a program")).set_defaults(func=cmd_check)
    with_file(sub.add_parser("arity", help="print the arity of each definition")).set_defaults(func=cmd_arity)

    run = with_file(sub.add_parser("run", help="evaluate the main expression"))
    run.add_argument("--args", help="comma-separated literals (class C)")
    run.add_argument("--normal", help="comma-separated normal literals (class B)")
    run.add_argument("--safe", help="comma-separated safe literals (class B)")
    run.add_argument("--time", action="store_true", help="also print the evaluation cost (class B)")
    run.add_argument("--checked", action="store_true", help="check every recursion bound (class C)")
    run.set_defaults(func=cmd_run)

    bound = with_file(sub.add_parser("bound", help="print a bounding polynomial"))
    bound.add_argument("--kind", choices=("length", "time", "envelope"), default="length")
    bound.set_defaults(func=cmd_bound)

    tr = with_file(sub.add_parser("translate", help="translate between the classes"), need_class=False)
    tr.add_argument("--from", dest="source", required=True, help="c, b or binf")
    tr.add_argument("--to", dest="target", required=True, help="c or b")
    tr.add_argument("--class", dest="cls", help="must agree with --from when given")
    tr.add_argument("-o", "--output", help="output file (default: stdout)")
    tr.set_defaults(func=cmd_translate)

    inf = with_file(sub.add_parser("infer", help="annotate an arity-free B program"), need_class=False)
    inf.add_argument("--floor", help="minimum root arity as 'n,s'")
    inf.add_argument("-o", "--output", help="output file (default: stdout)")
    inf.set_defaults(func=cmd_infer)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; that code is reserved for bound violations
        return EXIT_OK if exc.code == 0 else EXIT_USER
    try:
        if getattr(args, "cls", None) is not None and args.command not in ("translate",):
            args.cls = normalize_class(args.cls)
        return args.func(args, out, err)
    except PolytimeError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USER


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
