"""Command-line front end.

Exit codes: 0 all checks pass, 1 axiom failure, 2 invalid input,
3 I/O error.  JSON reports are deterministic at a fixed configuration:
timing lives in a separate "meta" block, everything else is stable
byte-for-byte across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import algebra_io
from .algebra_io import (
    MorphismSpec,
    ValidationFailure,
    builtin,
    builtin_names,
    load_document,
    render_document,
)
from .bv import AxiomReport, Bounds, bracket, check_bvinf, check_dbv, check_functoriality, order_defect
from .graded import InvalidInputError
from .operators import lift_coderivation
from .words import TElement, render_telement, shuffle_elements

OK, AXIOM_FAILURE, INVALID_INPUT, IO_ERROR = 0, 1, 2, 3


def _load(path: str):
    try:
        return load_document(path)
    except OSError as exc:
        raise _Exit(IO_ERROR, f"cannot read {path}: {exc}") from None


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        self.code = code
        self.message = message


def _print_reports_text(reports: list[AxiomReport], out) -> None:
    for r in reports:
        status = "PASS" if r.passed else f"FAIL ({r.failure_count} failing)"
        print(f"{status}  {r.name}: {r.cases} cases [{r.bound}]", file=out)
        for f in r.failures:
            ins = " | ".join("1" if not w else "(x)".join(w) for w in f.inputs)
            print(f"    inputs: {ins}", file=out)
            print(f"    defect: {render_telement(f.defect)}", file=out)


def _emit_check_report(args, reports: list[AxiomReport], elapsed: float, config: dict) -> None:
    if args.report == "json":
        payload = {
            "format_version": 1,
            "input": args.path,
            "command": "check",
            "config": config,
            "axioms": [r.to_json() for r in reports],
            "meta": {"elapsed_s": round(elapsed, 3)},
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _print_reports_text(reports, sys.stdout)
        print(f"({elapsed:.2f}s)", file=sys.stderr)


def _bounds(args) -> Bounds:
    return Bounds(
        unary=args.max_len,
        binary=args.pair_len,
        ternary=args.triple_len,
        order_slack=args.order_slack,
        fail_cap=args.fail_cap,
        jobs=args.jobs,
    )


def cmd_validate(args) -> int:
    doc = _load(args.path)
    if args.max_arity is not None and args.max_arity < 1:
        raise InvalidInputError("--max-arity must be >= 1")
    try:
        if isinstance(doc, MorphismSpec):
            algebra_io.validate_morphism(doc)
        elif doc.kind == "dga":
            algebra_io.validate_dga(doc)
        else:
            algebra_io.validate_ainf(doc, args.max_arity)
    except ValidationFailure as exc:
        print(f"INVALID: {len(exc.violations)} violation(s)")
        for v in exc.violations[: args.fail_cap]:
            print(f"  {v}")
        return INVALID_INPUT
    print("VALID")
    return OK


def cmd_check(args) -> int:
    doc = _load(args.path)
    if args.max_arity is not None and args.max_arity < 1:
        raise InvalidInputError("--max-arity must be >= 1")
    bounds = _bounds(args)
    started = time.monotonic()
    try:
        if isinstance(doc, MorphismSpec):
            morph = algebra_io.validate_morphism(doc)
            reports = check_functoriality(morph, bounds)
        elif doc.kind == "dga":
            if args.assume_valid:
                dga = algebra_io.DGAlgebra.from_spec_unchecked(doc)
            else:
                dga = algebra_io.validate_dga(doc)
            reports = check_dbv(dga, bounds)
        else:
            if args.assume_valid:
                ainf = algebra_io.AinfAlgebra.from_spec_unchecked(doc)
            else:
                ainf = algebra_io.validate_ainf(doc, args.max_arity)
            reports = check_bvinf(ainf, args.max_arity, bounds)
    except ValidationFailure as exc:
        print(f"INVALID: {len(exc.violations)} violation(s)")
        for v in exc.violations[: args.fail_cap]:
            print(f"  {v}")
        return INVALID_INPUT
    _emit_check_report(
        args,
        reports,
        time.monotonic() - started,
        {
            "max_len": args.max_len,
            "pair_len": args.pair_len,
            "triple_len": args.triple_len,
            "order_slack": args.order_slack,
            "max_arity": args.max_arity,
            "fail_cap": args.fail_cap,
            "jobs": args.jobs,
        },
    )
    return OK if all(r.passed for r in reports) else AXIOM_FAILURE


def _parse_word(text: str | None):
    if text is None:
        return None
    text = text.strip()
    if not text:
        return ()
    return tuple(part.strip() for part in text.split(","))


def cmd_eval(args) -> int:
    doc = _load(args.path)
    if isinstance(doc, MorphismSpec):
        raise InvalidInputError("eval needs an algebra, not a morphism")
    space = doc.space()
    words = [w for w in (_parse_word(args.x), _parse_word(args.y), _parse_word(args.z)) if w is not None]
    if not words:
        raise InvalidInputError("--x is required")
    els = [TElement.word(space, w) for w in words]

    op = args.op
    if op == "shuffle":
        if len(els) != 2:
            raise InvalidInputError("shuffle needs --x and --y")
        result = shuffle_elements(els[0], els[1])
    elif op == "d":
        if len(els) != 1:
            raise InvalidInputError("d takes only --x")
        result = lift_coderivation(doc.multilinear("d", space))(els[0])
    elif op == "delta":
        if len(els) != 1:
            raise InvalidInputError("delta takes only --x")
        result = lift_coderivation(doc.multilinear("mu2", space))(els[0])
    elif op == "bracket":
        if len(els) != 2:
            raise InvalidInputError("bracket needs --x and --y")
        result = bracket(els[0], els[1], lift_coderivation(doc.multilinear("mu2", space)))
    else:  # order-defect
        if len(els) < 2:
            raise InvalidInputError("order-defect needs at least --x and --y")
        delta = lift_coderivation(doc.multilinear("mu2", space))
        result = order_defect(delta, len(els) - 1, els)
    print(render_telement(result))
    return OK


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name in builtin_names():
            print(name)
        return OK
    spec = builtin(args.name)
    print(json.dumps(render_document(spec), indent=2, sort_keys=True))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shufflebv",
        description="Exact checks of the homotopy BV structure on word spaces "
        "of DG and A-infinity algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate an algebra or morphism file")
    p_validate.add_argument("path")
    p_validate.add_argument("--max-arity", type=int, default=None)
    p_validate.add_argument("--fail-cap", type=int, default=10)
    p_validate.set_defaults(fn=cmd_validate)

    p_check = sub.add_parser("check", help="run the full axiom suite")
    p_check.add_argument("path")
    p_check.add_argument("--max-len", type=int, default=5)
    p_check.add_argument("--pair-len", type=int, default=3)
    p_check.add_argument("--triple-len", type=int, default=2)
    p_check.add_argument("--order-slack", type=int, default=2)
    p_check.add_argument("--max-arity", type=int, default=None)
    p_check.add_argument("--report", choices=("text", "json"), default="text")
    p_check.add_argument("--fail-cap", type=int, default=10)
    p_check.add_argument("--jobs", type=int, default=1)
    p_check.add_argument(
        "--assume-valid",
        action="store_true",
        help="skip validation (the axiom suite then reports failures itself)",
    )
    p_check.set_defaults(fn=cmd_check)

    p_eval = sub.add_parser("eval", help="evaluate one operation on given words")
    p_eval.add_argument("path")
    p_eval.add_argument(
        "--op", required=True, choices=("shuffle", "d", "delta", "bracket", "order-defect")
    )
    p_eval.add_argument("--x", required=True, help="comma-separated letter ids")
    p_eval.add_argument("--y", default=None)
    p_eval.add_argument("--z", default=None)
    p_eval.set_defaults(fn=cmd_eval)

    p_fix = sub.add_parser("fixtures", help="list or dump the builtin examples")
    fix_sub = p_fix.add_subparsers(dest="action", required=True)
    p_list = fix_sub.add_parser("list")
    p_list.set_defaults(fn=cmd_fixtures, action="list")
    p_dump = fix_sub.add_parser("dump")
    p_dump.add_argument("name")
    p_dump.set_defaults(fn=cmd_fixtures, action="dump")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _Exit as exc:
        if exc.message:
            print(exc.message, file=sys.stderr)
        return exc.code
    except InvalidInputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID_INPUT
    except ValidationFailure as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
