"""Command-line frontend.

Subcommands: solve, translate, stratify, reduct, compare, eval.  All
semantics live in the library; this module only parses arguments, reads
files and formats results.  Exit codes: 0 success, 10 no models (solve),
2 file or parse error, 3 precondition error, 4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    ArithmeticOverflowError,
    EnumerationCapError,
    HtcError,
    ParseError,
    PreconditionError,
    UnsupportedOperationError,
)
from .model import DEFAULT_CAP, Interpretation, Valuation
from .parser import parse_program
from .printer import print_formula, print_program, print_rule, print_value
from .semantics import reduct, satisfies_classical
from .solver import enumerate_stable
from .syntax import SUM_VARIANTS, VC, DF, Program, lit_formula
from .transform import (
    ALL_POSITIVE,
    LevelMapping,
    pi_translate,
    stratification_check,
    swap_semantics,
)

EXIT_OK = 0
EXIT_FILE = 2
EXIT_PRECONDITION = 3
EXIT_CAP = 4
EXIT_NO_MODELS = 10


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="htc", description="interpreter and translator for .htc programs"
    )
    ap.add_argument("--mode", choices=(VC, DF), default=VC,
                    help="default tag for untagged conditional occurrences")
    ap.add_argument("--sum", choices=SUM_VARIANTS, default="strict",
                    dest="sum_variant", help="default sum evaluation variant")
    ap.add_argument("--cap", type=int, default=None,
                    help="candidate enumeration cap (env HTC_CAP overrides)")
    ap.add_argument("--format", choices=("json", "text"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="enumerate stable models")
    p.add_argument("path")

    p = sub.add_parser("translate", help="rewrite sum aggregates as linear terms")
    p.add_argument("path")

    p = sub.add_parser("stratify", help="check stratification")
    p.add_argument("path")
    p.add_argument("--occurrence", type=int, default=None,
                   help="occurrence id; default: all positive occurrences")

    p = sub.add_parser("reduct", help="print the program reduct wrt a model")
    p.add_argument("path")
    p.add_argument("model", help='bindings like "x=1,y=2" (empty string for none)')

    p = sub.add_parser("compare", help="solve before and after retagging an occurrence")
    p.add_argument("path")
    p.add_argument("occurrence", type=int)
    p.add_argument("new_mode", choices=(VC, DF))

    p = sub.add_parser("eval", help="evaluate the program at a valuation")
    p.add_argument("path")
    p.add_argument("valuation", help='bindings like "x=1,y=2"')
    return ap


def _resolve_cap(args) -> int:
    env = os.environ.get("HTC_CAP")
    if env is not None:
        return int(env)
    if args.cap is not None:
        if args.cap < 1:
            raise PreconditionError("cap must be at least 1")
        return args.cap
    return DEFAULT_CAP


def _load(args) -> Program:
    try:
        with open(args.path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ParseError(str(exc))
    return parse_program(text, args.mode, args.sum_variant)


def _parse_bindings(prog: Program, text: str) -> Valuation:
    bindings = {}
    text = text.strip()
    if text:
        for part in text.split(","):
            if "=" not in part:
                raise PreconditionError("bad binding %r" % part)
            name, val = part.split("=", 1)
            name, val = name.strip(), val.strip()
            if val.startswith('"') and val.endswith('"') and len(val) >= 2:
                bindings[name] = val[1:-1]
            else:
                try:
                    bindings[name] = int(val)
                except ValueError:
                    bindings[name] = val
    return Valuation.of(bindings, frozenset(prog.domain.variables))


def _emit(args, payload: dict, text_lines):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _model_payload(models):
    return [m.as_dict() for m in models]


def _model_line(m: Valuation) -> str:
    if not m.bindings:
        return "{}"
    return "{" + ", ".join("%s=%s" % (k, print_value(v)) for k, v in m.bindings) + "}"


def cmd_solve(args) -> int:
    prog = _load(args)
    result = enumerate_stable(prog, _resolve_cap(args))
    payload = {
        "models": _model_payload(result.models),
        "count": len(result.models),
        "semantics": "per-occurrence",
    }
    lines = ["%d model(s)" % len(result.models)]
    lines += [_model_line(m) for m in result.models]
    _emit(args, payload, lines)
    return EXIT_OK if result.models else EXIT_NO_MODELS


def cmd_translate(args) -> int:
    prog = _load(args)
    out = pi_translate(prog, args.mode)
    text = print_program(out, args.mode)
    _emit(args, {"program": text}, [text.rstrip("\n")])
    return EXIT_OK


def cmd_stratify(args) -> int:
    prog = _load(args)
    occ = args.occurrence if args.occurrence is not None else ALL_POSITIVE
    result = stratification_check(prog, occ)
    if isinstance(result, LevelMapping):
        levels = result.as_dict()
        payload = {"stratified": True, "levels": levels}
        lines = ["STRATIFIED"] + [
            "%s: %d" % (k, v) for k, v in sorted(levels.items())
        ]
    else:
        payload = {"stratified": False, "cycle": list(result.cycle)}
        lines = ["NOT_STRATIFIED", "cycle: {%s}" % ", ".join(result.cycle)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_reduct(args) -> int:
    prog = _load(args)
    t = _parse_bindings(prog, args.model)
    lines = []
    for r in prog.rules:
        lines.append(print_formula(reduct(r.formula(), t), args.mode))
    _emit(args, {"reduct": lines}, lines)
    return EXIT_OK


def cmd_compare(args) -> int:
    prog = _load(args)
    cap = _resolve_cap(args)
    before = enumerate_stable(prog, cap)
    after = enumerate_stable(swap_semantics(prog, args.occurrence, args.new_mode), cap)
    verdict = "EQUAL" if before.models == after.models else "DIFFER"
    payload = {
        "before": _model_payload(before.models),
        "after": _model_payload(after.models),
        "verdict": verdict,
    }
    lines = [
        "before: %s" % "  ".join(_model_line(m) for m in before.models),
        "after:  %s" % "  ".join(_model_line(m) for m in after.models),
        verdict,
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_eval(args) -> int:
    prog = _load(args)
    v = _parse_bindings(prog, args.valuation)
    total = Interpretation.total_of(v)
    rules = []
    lines = []
    for r in prog.rules:
        sat = satisfies_classical(v, r.formula())
        atoms = []
        for lit in (
            list(r.effective_body())
            + list(r.head if not hasattr(r.head, "var") else [])
        ):
            phi = lit_formula(lit)
            atoms.append(
                {
                    "literal": print_formula(phi, args.mode),
                    "holds": satisfies_classical(v, phi),
                }
            )
        rules.append({"rule": print_rule(r, args.mode), "holds": sat, "atoms": atoms})
        lines.append("%s  %s" % ("sat  " if sat else "unsat", print_rule(r, args.mode)))
        for a in atoms:
            lines.append("    %s  %s" % ("true " if a["holds"] else "false", a["literal"]))
    ok = all(r["holds"] for r in rules)
    payload = {"model": ok, "rules": rules}
    lines.append("MODEL" if ok else "NOT_A_MODEL")
    _emit(args, payload, lines)
    return EXIT_OK


_COMMANDS = {
    "solve": cmd_solve,
    "translate": cmd_translate,
    "stratify": cmd_stratify,
    "reduct": cmd_reduct,
    "compare": cmd_compare,
    "eval": cmd_eval,
}


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FILE
    except EnumerationCapError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CAP
    except (PreconditionError, UnsupportedOperationError,
            ArithmeticOverflowError, HtcError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
