"""Command-line interface.

Exit codes: 0 success or positive verdict; 1 negative domain verdict (not
equivalent, word rejected); 2 usage, parse or type errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from .coalgebra import CoalgebraError
from .documents import (
    SpecError,
    coalgebra_to_doc,
    load_spec,
    read_coalgebra,
    write_coalgebra,
)
from .dot import write_dot
from .equivalence import bisimilar, canonical_form, equiv, minimize
from .expr import ExprSyntaxError, order_context_for, pretty
from .extraction import extract
from .functor import FunctorSyntaxError, pretty_functor
from .fvalue import ShapeError, encode_value
from .instances import (
    core_to_lts,
    det_to_regex,
    gs_to_core,
    lts_to_core,
    parse_gs,
    parse_lts,
    parse_regex,
    pretty_lts,
    pretty_regex,
    regex_to_det,
    det_accepts,
)
from .derivative import delta
from .lattice import LatticeError
from .synthesis import acie_normal_form, synthesize
from .typecheck import TypecheckError, typecheck

USAGE_ERRORS = (
    SpecError,
    TypecheckError,
    ExprSyntaxError,
    FunctorSyntaxError,
    LatticeError,
    CoalgebraError,
    ShapeError,
    ValueError,
    OSError,
)


def _emit_machine(machine, fmt: str) -> None:
    if fmt == "dot":
        sys.stdout.write(write_dot(machine))
    elif fmt == "json":
        print(write_coalgebra(machine))
    else:
        doc = coalgebra_to_doc(machine)
        print(f"functor: {doc['functor']}")
        print(f"states: {', '.join(doc['states'])}" )
        if machine.point:
            print(f"point: {machine.point}")
        for s in machine.states:
            label = machine.labels.get(s)
            suffix = f"  # {label}" if label and label != s else ""
            print(f"  {s} -> {json.dumps(encode_value(machine.transition[s]))}{suffix}")


def _cmd_check(args, spec) -> int:
    e = spec.resolve_expr(args.expr)
    typecheck(e, spec.functor, spec.functor)
    print(f"ok: {pretty(e)} : {pretty_functor(spec.functor)}")
    return 0


def _cmd_delta(args, spec) -> int:
    e = spec.resolve_expr(args.expr)
    value = delta(spec.functor, spec.functor, e)
    printable = _carriers_to_text(value)
    if args.format == "json":
        print(json.dumps(encode_value(printable)))
    else:
        print(json.dumps(encode_value(printable)))
    return 0


def _carriers_to_text(value):
    from .fvalue import fmap

    return fmap_expr_carriers(value)


def fmap_expr_carriers(value):
    from .fvalue import FCarrier, FFun, FInl, FInr, FPair, FSet

    match value:
        case FCarrier(item):
            return FCarrier(item if isinstance(item, str) else pretty(item))
        case FPair(l, r):
            return FPair(fmap_expr_carriers(l), fmap_expr_carriers(r))
        case FInl(i):
            return FInl(fmap_expr_carriers(i))
        case FInr(i):
            return FInr(fmap_expr_carriers(i))
        case FFun(entries):
            return FFun(tuple((a, fmap_expr_carriers(v)) for a, v in entries))
        case FSet(members):
            return FSet(tuple(fmap_expr_carriers(m) for m in members))
        case _:
            return value


def _cmd_synthesize(args, spec) -> int:
    machine = synthesize(spec.functor, spec.resolve_expr(args.expr))
    _emit_machine(machine, args.format)
    return 0


def _cmd_equiv(args, spec) -> int:
    cert = equiv(spec.functor, spec.resolve_expr(args.e1), spec.resolve_expr(args.e2))
    print(str(cert))
    return 0 if cert.bisimilar else 1


def _cmd_normalize(args, spec) -> int:
    e = spec.resolve_expr(args.expr)
    typecheck(e, spec.functor, spec.functor)
    print(pretty(acie_normal_form(e, order_context_for(spec.functor))))
    return 0


def _cmd_canon(args, spec) -> int:
    print(pretty(canonical_form(spec.functor, spec.resolve_expr(args.expr))))
    return 0


def _cmd_accepts(args, spec) -> int:
    e = spec.resolve_expr(args.expr)
    accepted = det_accepts(e, args.word, spec.functor)
    print("accepted" if accepted else "rejected")
    return 0 if accepted else 1


def _cmd_extract(args) -> int:
    machine = read_coalgebra(args.coalgebra)
    state = args.state or machine.point
    if state is None:
        raise CoalgebraError("no state given and the document has no point")
    print(pretty(extract(machine, state)))
    return 0


def _cmd_minimize(args) -> int:
    machine = minimize(read_coalgebra(args.coalgebra))
    _emit_machine(machine, args.format)
    return 0


def _cmd_bisim(args) -> int:
    c1 = read_coalgebra(args.c1)
    c2 = read_coalgebra(args.c2)
    s1 = args.s1 or c1.point
    s2 = args.s2 or c2.point
    cert = bisimilar(c1, s1, c2, s2)
    print(str(cert))
    return 0 if cert.bisimilar else 1


def _cmd_translate(args, spec) -> int:
    mode = args.mode
    if mode == "regex2d":
        print(pretty(regex_to_det(parse_regex(args.input))))
    elif mode == "d2regex":
        e = spec.resolve_expr(args.input)
        typecheck(e, spec.functor, spec.functor)
        print(pretty_regex(det_to_regex(e)))
    elif mode == "lts2core":
        print(pretty(lts_to_core(parse_lts(args.input))))
    elif mode == "core2lts":
        print(pretty_lts(core_to_lts(spec.resolve_expr(args.input))))
    elif mode == "gs2core":
        from .functor import Const, Exponent, Product

        f = spec.functor
        if not (
            isinstance(f, Product)
            and isinstance(f.left, Const)
            and isinstance(f.right, Exponent)
        ):
            raise SpecError("gs2core needs a guarded-string spec (preset guarded)")
        lattice = f.left.lattice
        letters = f.right.alphabet
        atoms = list(dict.fromkeys(l.split(".", 1)[0] for l in letters))
        actions = list(dict.fromkeys(l.split(".", 1)[1] for l in letters))
        print(pretty(gs_to_core(parse_gs(args.input), lattice, atoms, actions)))
    else:
        raise SpecError(f"unknown translate mode {mode!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coalgex",
        description="Generalized regular expressions over coalgebra types: "
        "type checking, synthesis, extraction, equivalence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(p):
        p.add_argument("--spec", required=True, help="spec document path")
        return p

    def with_format(p):
        p.add_argument("--format", choices=("text", "json", "dot"), default="text")
        return p

    p = with_spec(sub.add_parser("check", help="type check an expression"))
    p.add_argument("--expr", required=True)

    p = with_format(with_spec(sub.add_parser("delta", help="one derivative step")))
    p.add_argument("--expr", required=True)

    p = with_format(with_spec(sub.add_parser("synthesize", help="expression to machine")))
    p.add_argument("--expr", required=True)

    p = with_spec(sub.add_parser("equiv", help="decide expression equivalence"))
    p.add_argument("--e1", required=True)
    p.add_argument("--e2", required=True)

    p = with_spec(sub.add_parser("normalize", help="canonical sum normal form"))
    p.add_argument("--expr", required=True)

    p = with_spec(sub.add_parser("canon", help="canonical class representative"))
    p.add_argument("--expr", required=True)

    p = with_spec(sub.add_parser("accepts", help="word acceptance (acceptor types)"))
    p.add_argument("--expr", required=True)
    p.add_argument("--word", required=True, default="")

    p = sub.add_parser("extract", help="expression from a machine state")
    p.add_argument("--coalgebra", required=True, help="machine document (JSON)")
    p.add_argument("--state")

    p = with_format(sub.add_parser("minimize", help="quotient by bisimilarity"))
    p.add_argument("--coalgebra", required=True)

    p = sub.add_parser("bisim", help="bisimilarity of two machine states")
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.add_argument("--s1")
    p.add_argument("--s2")

    p = with_spec(sub.add_parser("translate", help="surface-syntax translations"))
    p.add_argument(
        "--mode",
        required=True,
        choices=("regex2d", "d2regex", "lts2core", "core2lts", "gs2core"),
    )
    p.add_argument("--input", required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args, load_spec(args.spec))
        if args.command == "delta":
            return _cmd_delta(args, load_spec(args.spec))
        if args.command == "synthesize":
            return _cmd_synthesize(args, load_spec(args.spec))
        if args.command == "equiv":
            return _cmd_equiv(args, load_spec(args.spec))
        if args.command == "normalize":
            return _cmd_normalize(args, load_spec(args.spec))
        if args.command == "canon":
            return _cmd_canon(args, load_spec(args.spec))
        if args.command == "accepts":
            return _cmd_accepts(args, load_spec(args.spec))
        if args.command == "extract":
            return _cmd_extract(args)
        if args.command == "minimize":
            return _cmd_minimize(args)
        if args.command == "bisim":
            return _cmd_bisim(args)
        if args.command == "translate":
            return _cmd_translate(args, load_spec(args.spec))
        parser.error(f"unknown command {args.command!r}")
    except USAGE_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
