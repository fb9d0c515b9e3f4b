"""Command-line harness: build, inspect and check rings; run the theorem suite.

Exit codes: 0 all pass, 1 a property or theorem failed (witnesses printed),
2 usage or input error, 3 internal inconsistency between independent routes.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from contextlib import contextmanager

from . import __version__
from .config import settings
from .corpus import PROFILES, generate_corpus
from .dsl import Elaborator, Sidecar
from .elements import (exchange_witness, is_idempotent, regular_witness, unit_inverse)
from .errors import CapacityError, InternalInconsistency, InvalidParameter
from .properties import (_jsonable, classify_semiperfect_vnl, is_exchange_ring, is_n_vnl, is_nj,
                         is_potent, is_regular_ring, is_semipotent, is_vnl, vnl_via_corner_condition,
                         vnl_via_mr_local)
from .ring import RingElement, validate_ring
from .structure import (classify_ring, idempotent_census, jacobson_mask, maximal_regular_ideal,
                        primitive_decomposition)
from .theorems import REGISTRY, SuiteContext, run_theorem_suite, search_question, suite_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3

PROPERTIES = {
    "regular": is_regular_ring,
    "vnl": is_vnl,
    "nj": is_nj,
    "exchange": is_exchange_ring,
    "potent": is_potent,
    "semipotent": is_semipotent,
    "vnl-corner": vnl_via_corner_condition,
    "vnl-mr": vnl_via_mr_local,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--seed", type=int, default=d(0), help="seed for sampled checks")
    p.add_argument("--dense-cap", type=int, default=d(None), help="largest order given dense tables")
    p.add_argument("--budget", type=int, default=d(None), help="random triples for sampled validation")
    p.add_argument("--sidecar", default=d(None), help="JSON file of named modules and ideals")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ringlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ringlab {__version__}")
    _globals(p, suppress=False)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(name, help_):
        s = sub.add_parser(name, help=help_)
        _globals(s, suppress=True)
        return s

    cmd("build", "build and validate a ring").add_argument("expr")
    cmd("classify", "structural flags and the VNL shape").add_argument("expr")
    s = cmd("check", "decide a ring property")
    s.add_argument("property", help=f"one of {', '.join(PROPERTIES)} or n-vnl")
    s.add_argument("expr")
    s.add_argument("-n", type=int, default=2, help="row length for n-vnl")
    s = cmd("element", "analyse one element")
    s.add_argument("expr")
    s.add_argument("index", type=int)
    s = cmd("verify", "run named theorem checks over a corpus")
    s.add_argument("ids", nargs="*", help="theorem ids, or 'all' (default)")
    s.add_argument("--profile", choices=PROFILES, default="quick")
    s = cmd("search", "look for counterexamples to an open question")
    s.add_argument("which", help="q53 or q54")
    s.add_argument("--profile", choices=PROFILES, default="quick")
    s = cmd("corpus", "corpus utilities")
    s.add_argument("action", choices=["list"])
    s.add_argument("--profile", choices=PROFILES, default="quick")
    return p


@contextmanager
def _overrides(args):
    saved = dataclasses.replace(settings)
    try:
        if args.dense_cap is not None:
            settings.dense_cap = args.dense_cap
        if args.budget is not None:
            settings.sample_budget = args.budget
        yield
    finally:
        for f in dataclasses.fields(settings):
            setattr(settings, f.name, getattr(saved, f.name))


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(_jsonable(payload), sort_keys=True))
    else:
        for line in lines:
            print(line)


def _elaborator(args) -> Elaborator:
    sidecar = Sidecar.load(args.sidecar) if args.sidecar else None
    return Elaborator(sidecar, args.dense_cap)


def _cmd_build(args) -> int:
    ring = _elaborator(args).ring(args.expr)
    info = validate_ring(ring, samples=settings.sample_budget, seed=args.seed)
    out = dict(ring.describe(), validation=info)
    _emit(args, out, [f"{ring.label}: order {ring.order}, {ring.repr_kind}, axioms ok"])
    return EXIT_OK


def _cmd_classify(args) -> int:
    ring = _elaborator(args).ring(args.expr)
    flags = classify_ring(ring)
    census = idempotent_census(ring)
    shape = classify_semiperfect_vnl(ring)
    out = dict(ring.describe(), flags=flags.to_dict(),
               idempotents=len(census.all), central_idempotents=len(census.central),
               primitive_decomposition=list(primitive_decomposition(ring).idempotents),
               jacobson_order=int(jacobson_mask(ring).sum()),
               maximal_regular_ideal=list(maximal_regular_ideal(ring).members),
               vnl_shape=shape.to_dict())
    on = [k for k, v in flags.to_dict().items() if v]
    _emit(args, out, [f"{ring.label}: order {ring.order}",
                      f"  flags: {', '.join(on) or 'none'}",
                      f"  idempotents: {len(census.all)} ({len(census.central)} central), "
                      f"|J| = {out['jacobson_order']}, |M(R)| = {len(out['maximal_regular_ideal'])}",
                      f"  shape: {shape.tag}"])
    return EXIT_OK


def _cmd_check(args) -> int:
    ring = _elaborator(args).ring(args.expr)
    if args.property == "n-vnl":
        if args.n < 1:
            raise InvalidParameter("n must be positive", args.n)
        report = is_n_vnl(ring, args.n)
    elif args.property in PROPERTIES:
        report = PROPERTIES[args.property](ring)
    else:
        raise InvalidParameter(f"unknown property {args.property!r}; known: "
                               f"{', '.join(PROPERTIES)}, n-vnl", args.property)
    out = dict(report.to_dict(), ring=ring.label)
    line = f"{ring.label}: {report.property} {'holds' if report.holds else 'fails'}"
    if report.witness is not None:
        line += f" (witness {json.dumps(_jsonable(report.witness))})"
    _emit(args, out, [line])
    return EXIT_OK if report.holds else EXIT_FAIL


def _cmd_element(args) -> int:
    ring = _elaborator(args).ring(args.expr)
    a = RingElement(ring, args.index)
    w, u, x = regular_witness(a), unit_inverse(a), exchange_witness(a)
    out = {"ring": ring.label, "index": a.index, "value": ring.format(a.index),
           "regular": w is not None, "witness": w.to_dict() if w else None,
           "unit": u is not None, "inverse": u.index if u is not None else None,
           "idempotent": is_idempotent(a), "in_jacobson": bool(jacobson_mask(ring)[a.index]),
           "exchange": x.to_dict() if x else None}
    lines = [f"{ring.label}[{a.index}] = {out['value']}",
             f"  regular: {out['regular']}" + (f" (a·{w.inner_inverse}·a = a)" if w else ""),
             f"  unit: {out['unit']}" + (f" (inverse {out['inverse']})" if u is not None else ""),
             f"  idempotent: {out['idempotent']}, in J(R): {out['in_jacobson']}"]
    if x:
        lines.append(f"  exchange idempotent: {x.idempotent}")
    _emit(args, out, lines)
    return EXIT_OK


def _context(args) -> SuiteContext:
    elab = _elaborator(args)
    return SuiteContext(generate_corpus(args.profile, args.seed, elaborator=elab),
                        args.profile, args.seed, elab)


def _cmd_verify(args) -> int:
    ids = args.ids or ["all"]
    if ids != ["all"]:
        unknown = [i for i in ids if i not in REGISTRY]
        if unknown:
            raise InvalidParameter(f"unknown theorem id {unknown[0]!r}; known: {', '.join(REGISTRY)}",
                                   unknown[0])
    reports = run_theorem_suite(ids, ctx=_context(args))
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.theorem_id}: {r.instances_checked} instances, "
                     f"{len(r.failures)} failures, {r.skipped} skipped")
        for f in r.failures:
            lines.append(f"    {f.ring}: {f.condition}; witness {json.dumps(_jsonable(f.witness))}")
    _emit(args, suite_json(reports, args.profile, args.seed), lines)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_search(args) -> int:
    report = search_question(args.which, ctx=_context(args))
    out = suite_json([report], args.profile, args.seed)
    if report.failures:
        lines = [f"{args.which}: {len(report.failures)} candidate counterexample(s) among "
                 f"{report.instances_checked} rings"]
        lines += [f"    {f.ring}: {f.condition}; witness {json.dumps(_jsonable(f.witness))}"
                  for f in report.failures]
        out["summary"] = "candidates found"
    else:
        msg = "no counterexample up to the searched bound"
        lines = [f"{args.which}: {msg} ({report.corpus_description}, "
                 f"{report.instances_checked} rings)"]
        out["summary"] = msg
    _emit(args, out, lines)
    return EXIT_OK


def _cmd_corpus(args) -> int:
    entries = generate_corpus(args.profile, args.seed, elaborator=_elaborator(args))
    out = {"profile": args.profile, "seed": args.seed,
           "rings": [dict(e.describe(), parent=e.parent) for e in entries]}
    _emit(args, out, [f"{e.order:6d}  {e.origin:8s}  {e.expr}" for e in entries])
    return EXIT_OK


COMMANDS = {"build": _cmd_build, "classify": _cmd_classify, "check": _cmd_check,
            "element": _cmd_element, "verify": _cmd_verify, "search": _cmd_search,
            "corpus": _cmd_corpus}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ringlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        with _overrides(args):
            return COMMANDS[args.command](args)
    except InternalInconsistency as exc:
        print(f"ringlab: internal inconsistency: {exc}", file=sys.stderr)
        if exc.context:
            print(json.dumps(_jsonable(exc.context), sort_keys=True), file=sys.stderr)
        return EXIT_INCONSISTENT
    except (InvalidParameter, CapacityError) as exc:
        print(f"ringlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
