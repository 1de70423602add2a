"""Command line front end: ``gammalib <verb> [targets] -f FILE [options]``.

Exit status is 0 when every record passes or is skipped, 1 when any record
fails or errors, and 2 for usage, parse, and reference errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import BudgetError, GammaError, StructureFileError
from .filtration import Filtration, adic_chain, associated_graded, check_filtration, verify_associated_graded
from .grading import (
    GradedGammaRing,
    check_internal_grading,
    coarsen_by_quotient,
    crossed_product_check,
    regrade_epimorphism,
    restrict_subsemigroup,
    strongly_graded_check,
)
from .hom import check_hom, decompose_hom, degree_of_hom, endomorphism_graded_ring, enumerate_homs
from .module import (
    FilteredModule,
    GammaModule,
    GradedGammaModule,
    check_filtered_module,
    check_graded_module,
    check_module_axioms,
    check_submodule,
    gr_module,
    maximal_graded_submodule,
    quotient_module,
    strongly_graded_module_check,
)
from .report import Record, Report
from .ring import GammaRing, Ideal, check_axioms, find_unities, is_ideal, make_ideal, quotient_by_ideal
from .serialize import HomDecl, StructureSet, dumps, emit_external_graded, emit_grading, emit_ring, load, validate
from .verdict import DEFAULT_MAX_ENUM, Verdict, enumeration_budget

CHECKS = ("axioms", "ideal", "grading", "strong", "crossed", "filtration", "module", "graded-module", "filtered-module", "hom", "submodule")


class UsageError(Exception):
    pass


# --- argument helpers -------------------------------------------------------------


def _ring(obj) -> GammaRing:
    if isinstance(obj, GradedGammaRing):
        return obj.ring
    if isinstance(obj, GammaRing):
        return obj
    raise UsageError(f"expected a ring, got {type(obj).__name__}")


def _graded(obj) -> GradedGammaRing:
    if isinstance(obj, GradedGammaRing):
        return obj
    if isinstance(obj, GammaRing) and obj.canonical_grading is not None:
        from .grading import canonical_grading

        return canonical_grading(obj)
    raise UsageError(f"expected a graded ring, got {type(obj).__name__}")


def _elements_arg(structures: StructureSet, text: str):
    """An element list given as JSON, or the name of an ideal/submodule declaration."""
    text = text.strip()
    if text.startswith("["):
        try:
            return [tuple(x) for x in json.loads(text)]
        except (json.JSONDecodeError, TypeError) as exc:
            raise UsageError(f"bad element list {text!r}: {exc}") from None
    obj = structures[text]
    if isinstance(obj, Ideal):
        return list(obj.elements)
    raise UsageError(f"{text!r} is not an ideal or an element list")


def _labels_arg(text: str) -> list:
    text = text.strip()
    if text.startswith("["):
        return [str(x) for x in json.loads(text)]
    return [t for t in text.split(",") if t]


def _default_targets(structures: StructureSet, kind: str) -> list:
    want = {
        "axioms": (GammaRing, GradedGammaRing),
        "ideal": (Ideal,),
        "grading": (GradedGammaRing,),
        "strong": (GradedGammaRing, GradedGammaModule),
        "crossed": (GradedGammaRing,),
        "filtration": (Filtration,),
        "module": (GammaModule,),
        "graded-module": (GradedGammaModule,),
        "filtered-module": (FilteredModule,),
        "hom": (HomDecl,),
    }.get(kind, ())
    return [n for n, o in structures.objects.items() if isinstance(o, want)]


# --- verbs ------------------------------------------------------------------------------


def _check(kind: str, obj, args, structures) -> tuple:
    """``(verdict, result)`` for one ``check`` record."""
    if kind == "axioms":
        return check_axioms(_ring(obj)), None
    if kind == "ideal":
        if not isinstance(obj, Ideal):
            raise UsageError("check ideal expects an ideal declaration")
        return is_ideal(obj.ring, obj.subgroup, obj.side), {"side": obj.side}
    if kind == "grading":
        g = _graded(obj)
        v = check_axioms(g.ring)
        return (v if not v else check_internal_grading(g)), {"support": list(g.support)}
    if kind == "strong":
        if isinstance(obj, GradedGammaModule):
            return strongly_graded_module_check(obj), None
        return strongly_graded_check(_graded(obj)), None
    if kind == "crossed":
        g = _graded(obj)
        unities = find_unities(g.ring)
        if not unities:
            return Verdict.failed("unity", ["no unity"]), None
        rep = crossed_product_check(g, unities[0])
        return rep.verdict, {"unit_support": list(rep.unit_support), "support": list(rep.support), "strong": str(rep.strong)}
    if kind == "filtration":
        return check_filtration(obj), {"sizes": [len(c) for c in obj.chain]}
    if kind == "module":
        m = obj.module if isinstance(obj, GradedGammaModule) else obj
        return check_module_axioms(m), None
    if kind == "graded-module":
        return check_graded_module(obj), {"support": list(obj.support)}
    if kind == "filtered-module":
        return check_filtered_module(obj), {"sizes": [len(c) for c in obj.chain]}
    if kind == "hom":
        if not isinstance(obj, HomDecl):
            raise UsageError("check hom expects a hom declaration")
        return check_hom(obj.hom, obj.phi), None
    if kind == "submodule":
        if args.K is None:
            raise UsageError("check submodule needs --K")
        m = obj.module if isinstance(obj, GradedGammaModule) else obj
        return check_submodule(m, _elements_arg(structures, args.K)), None
    raise UsageError(f"unknown check {kind!r}")


def _emit(args, decls: dict) -> None:
    if args.out:
        Path(args.out).write_text(dumps(decls), encoding="utf-8")


def _run_one(verb: str, target: str, args, structures: StructureSet) -> tuple:
    """``(record id, verdict, result)``; may raise GammaError or BudgetError."""
    obj = structures[target] if target else None
    if verb == "check":
        v, res = _check(args.what, obj, args, structures)
        return f"check/{args.what}", v, res
    if verb == "validate":
        return "validate", validate(obj), None
    if verb == "unities":
        us = find_unities(_ring(obj))
        return "unities", Verdict.passed(), [{"one": u.one, "gamma0": u.gamma0} for u in us]
    if verb in ("regrade", "restrict", "coarsen"):
        g = _graded(obj)
        if verb == "regrade":
            if not args.phi:
                raise UsageError("regrade needs --phi")
            out = regrade_epimorphism(g, structures[args.phi])
        elif verb == "restrict":
            if not args.H:
                raise UsageError("restrict needs --H")
            out = restrict_subsemigroup(g, _labels_arg(args.H))
        else:
            if not args.N:
                raise UsageError("coarsen needs --N")
            out = coarsen_by_quotient(g, _labels_arg(args.N))
        name = f"{target}.{verb}"
        _emit(args, emit_grading(out, name))
        return verb, check_internal_grading(out), {"name": name, "G": list(out.G.labels), "sizes": {k: len(c) for k, c in out.components.items()}}
    if verb == "quotient":
        if not args.ideal:
            raise UsageError("quotient needs --ideal")
        ring = _ring(obj)
        q = quotient_by_ideal(ring, make_ideal(ring, _elements_arg(structures, args.ideal)))
        decl, _ = emit_ring(q)
        name = f"{target}.quotient"
        _emit(args, {name: decl})
        return "quotient", check_axioms(q), {"name": name, "size": len(q.carrier)}
    if verb == "gr":
        if not isinstance(obj, Filtration):
            raise UsageError("gr expects a filtration")
        gr = associated_graded(obj)
        name = f"{target}.gr"
        _emit(args, emit_external_graded(gr.graded, dict(zip(gr.graded.G.labels, gr.quotients)), name))
        return "gr", verify_associated_graded(gr), {"name": name, "sizes": [len(q) for q in gr.quotients]}
    if verb == "adic":
        if not args.ideal:
            raise UsageError("adic needs --ideal")
        ring = _ring(obj)
        dc = adic_chain(ring, make_ideal(ring, _elements_arg(structures, args.ideal)))
        return "adic", Verdict.passed(), {"sizes": dc.sizes(), "stabilization": dc.stabilization, "chain": [list(c.elements) for c in dc.chain]}
    if verb == "gr-module":
        if not isinstance(obj, FilteredModule):
            raise UsageError("gr-module expects a filtered module")
        gm = gr_module(obj)
        return "gr-module", check_graded_module(gm.graded), {"sizes": [len(q) for q in gm.quotients]}
    if verb in ("quotient-module", "K-prime"):
        if not isinstance(obj, GradedGammaModule):
            raise UsageError(f"{verb} expects a graded module")
        if not args.K:
            raise UsageError(f"{verb} needs --K")
        K = _elements_arg(structures, args.K)
        if verb == "quotient-module":
            res = quotient_module(obj, K)
            return verb, res.verdict, {"size": len(res.graded.carrier), "direct": str(res.direct), "component_orders": res.component_orders}
        res = maximal_graded_submodule(obj, K)
        return verb, res.verdict, {"elements": list(res.submodule.elements)}
    if verb == "end-ring":
        if not isinstance(obj, GradedGammaModule):
            raise UsageError("end-ring expects a graded module")
        E = endomorphism_graded_ring(obj)
        return "end-ring", E.verdict, {
            "size": len(E.elements),
            "components": {h: len(fs) for h, fs in E.components.items()},
            "degrees": {f"{a}*{b}": list(d) for (a, b), d in E.degree_table().items()},
        }
    if verb == "hom":
        return _run_hom(target, obj, args, structures)
    raise UsageError(f"unknown verb {verb!r}")


def _run_hom(target, obj, args, structures) -> tuple:
    action = args.action
    if action == "enumerate":
        raise UsageError("internal: enumerate is handled separately")
    if not isinstance(obj, HomDecl):
        raise UsageError(f"hom {action} expects a hom declaration")
    f = obj.hom
    if action == "check":
        return "hom/check", check_hom(f, obj.phi), None
    if action == "degree":
        if args.h is None:
            raise UsageError("hom degree needs --h")
        return "hom/degree", degree_of_hom(f, args.h), {"h": args.h}
    if action == "decompose":
        d = decompose_hom(f)
        parts = {g: [[x, p.values[x]] for x in sorted(p.values)] for g, p in d.parts.items() if not p.is_zero()}
        return "hom/decompose", d.verdict, {"support": list(d.support), "parts": parts}
    raise UsageError(f"unknown hom action {action!r}")


def _timed_record(rid_default: str, target: str, fn) -> Record:
    start = time.perf_counter()
    try:
        rid, v, res = fn()
        rec = Record.from_verdict(rid, target, v, result=res)
    except BudgetError as exc:
        rec = Record(rid_default, target, "skipped", detail=f"budget: {exc}")
    except GammaError as exc:
        rec = Record(rid_default, target, "error", law=type(exc).__name__, witness=exc.witness, detail=str(exc))
    except AssertionError as exc:
        rec = Record(rid_default, target, "error", law=type(exc).__name__, witness=getattr(exc, "witness", None), detail=str(exc))
    rec.timing_ms = (time.perf_counter() - start) * 1000
    return rec


def run(args, structures: StructureSet) -> Report:
    report = Report()
    verb = args.verb
    for name, v in structures.validation.items():
        if isinstance(v, BudgetError):
            report.add(Record("load", name, "skipped", detail=f"budget: {v}"))
        elif not v:
            report.add(Record.from_verdict("load", name, v))
    if verb == "hom" and args.action == "enumerate":
        if len(args.targets) != 2:
            raise UsageError("hom enumerate takes a source and a target module")
        M, K = (structures[t] for t in args.targets)

        def enum():
            homs = enumerate_homs(M, K)
            return "hom/enumerate", Verdict.passed(), {"count": len(homs), "homs": [list(h.key) for h in homs]}

        report.add(_timed_record("hom/enumerate", " ".join(args.targets), enum))
        return report
    targets = list(args.targets)
    rid = f"check/{args.what}" if verb == "check" else (f"hom/{args.action}" if verb == "hom" else verb)
    if not targets:
        if verb == "check":
            targets = _default_targets(structures, args.what)
        elif verb == "validate":
            targets = structures.names()
        else:
            raise UsageError(f"{verb} needs at least one target")
    for t in targets:
        if t not in structures:
            if isinstance(structures.validation.get(t), BudgetError):
                report.add(Record(rid, t, "skipped", detail=f"budget: {structures.validation[t]}"))
                continue
            raise StructureFileError(f"unknown target {t!r}", t)
        report.add(_timed_record(rid, t, lambda t=t: _run_one(verb, t, args, structures)))
    return report


# --- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--file", help="structure file (JSON)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="JSON report (default)")
    fmt.add_argument("--text", dest="format", action="store_const", const="text", help="one line per record")
    common.add_argument("--out", help="write emitted structures here")
    common.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM, help="cap on primitive checks per record")
    common.add_argument("--lazy", action="store_true", help="skip validation of declarations on load")
    common.add_argument("--no-timing", action="store_true", help="omit timing fields from the report")
    common.add_argument("--report", help="also write the report to this file")

    parser = argparse.ArgumentParser(prog="gammalib", description="Construct and verify finite Gamma-rings, gradings, filtrations and modules.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", parents=[common], help="run a verifier")
    p.add_argument("what", choices=CHECKS)
    p.add_argument("targets", nargs="*")
    p.add_argument("--K", help="subgroup for check submodule")

    sub.add_parser("validate", parents=[common], help="run every declaration's validator").add_argument("targets", nargs="*")
    sub.add_parser("unities", parents=[common], help="list unities").add_argument("targets", nargs="*")

    p = sub.add_parser("regrade", parents=[common], help="regrade along an onto semigroup map")
    p.add_argument("targets", nargs="*")
    p.add_argument("--phi", help="name of a semigroup_map")
    p = sub.add_parser("restrict", parents=[common], help="restrict to a subsemigroup")
    p.add_argument("targets", nargs="*")
    p.add_argument("--H", help="labels, comma separated")
    p = sub.add_parser("coarsen", parents=[common], help="coarsen by a subgroup N")
    p.add_argument("targets", nargs="*")
    p.add_argument("--N", help="labels, comma separated")

    for verb, help_ in (("quotient", "quotient ring R/I"), ("adic", "I-adic descending chain")):
        p = sub.add_parser(verb, parents=[common], help=help_)
        p.add_argument("targets", nargs="*")
        p.add_argument("--ideal", help="ideal name or JSON element list")

    sub.add_parser("gr", parents=[common], help="associated graded ring of a filtration").add_argument("targets", nargs="*")
    sub.add_parser("gr-module", parents=[common], help="associated graded module").add_argument("targets", nargs="*")
    for verb in ("quotient-module", "K-prime"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("targets", nargs="*")
        p.add_argument("--K", help="submodule as ideal name or JSON element list")
    sub.add_parser("end-ring", parents=[common], help="graded endomorphism ring").add_argument("targets", nargs="*")

    p = sub.add_parser("hom", parents=[common], help="module homomorphisms")
    p.add_argument("action", choices=("check", "degree", "decompose", "enumerate"))
    p.add_argument("targets", nargs="*")
    p.add_argument("--h", help="degree label for hom degree")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for attr in ("K", "phi", "H", "N", "ideal", "h", "what", "action"):
        if not hasattr(args, attr):
            setattr(args, attr, None)
    try:
        with enumeration_budget(args.max_enum):
            structures = load(args.file, lazy=args.lazy) if args.file else StructureSet()
            report = run(args, structures)
    except (StructureFileError, UsageError) as exc:
        print(f"gammalib: error: {exc}", file=sys.stderr)
        return 2
    text = report.to_text() if args.format == "text" else report.to_json(timing=not args.no_timing)
    sys.stdout.write(text)
    if args.report:
        Path(args.report).write_text(report.to_json(timing=not args.no_timing), encoding="utf-8")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
