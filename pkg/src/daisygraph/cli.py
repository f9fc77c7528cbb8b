"""Command-line interface.

Exit status: 0 success or affirmative verdict, 1 well-formed negative verdict
(not gradable, not realizable, not liftable), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import oracle as oracle_mod
from .arcs import NotLiftable, closed_arc_parities, decompose_arcs, short_grade_lift
from .grading import Grading, NotGradable, grade
from .model import (
    AnyGraph,
    ArrowedDaisyGraph,
    DaisyError,
    DaisyGraph,
    OrderedDaisyGraph,
    euler_char_of_image,
)
from .realize import ManifoldClass, decide_realizable
from .textio import ParseError, export_dot, parse, serialize


class UsageError(Exception):
    pass


# -- JSON shapes ------------------------------------------------------------


def grading_json(gr: Grading) -> dict[str, Any]:
    return {"grades": dict(sorted(gr.grades.items())), "bases": dict(sorted(gr.bases.items()))}


def not_gradable_json(ng: NotGradable) -> dict[str, Any]:
    out: dict[str, Any] = {"reason": ng.reason}
    if ng.reason == "obstructing-loop":
        out["loops"] = list(ng.loops)
    elif ng.edge is not None:
        out.update(edge=ng.edge, vertex=ng.vertex, assigned=ng.assigned, required=ng.required)
    return out


def grade_result_json(result: Grading | NotGradable) -> dict[str, Any]:
    if isinstance(result, NotGradable):
        return {"gradable": False, **not_gradable_json(result)}
    return {"gradable": True, **grading_json(result)}


def arcs_json(g: AnyGraph) -> dict[str, Any]:
    d = decompose_arcs(g)
    return {
        "circles": d.circles,
        "arcs": [
            {"kind": a.kind, "edges": list(a.edges),
             "passages": [{"vertex": v, "pair": [str(p[0]), str(p[1])]} for v, p in a.passages]}
            for a in d.arcs
        ],
        "closed_arc_parities": [
            {"edges": list(p.arc.edges), "length": p.length, "parity": p.parity}
            for p in closed_arc_parities(g)
        ],
    }


def verdict_json(v) -> dict[str, Any]:
    out: dict[str, Any] = {"manifold": v.manifold.value, "realizable": v.realizable, "reasons": list(v.reasons)}
    if v.db_vertices:
        out["db_vertices"] = list(v.db_vertices)
    if v.grading_evidence is not None:
        out["grading_evidence"] = not_gradable_json(v.grading_evidence)
    return out


# -- helpers ----------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str) -> AnyGraph:
    return parse(_read(path))


def _load_arrowed(path: str) -> ArrowedDaisyGraph | OrderedDaisyGraph:
    g = _load(path)
    if not isinstance(g, (ArrowedDaisyGraph, OrderedDaisyGraph)):
        raise UsageError("expected an adg or odg document")
    return g


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _grading_text(gr: Grading) -> str:
    lines = [f"grade {e} {g}" for e, g in sorted(gr.grades.items())]
    lines += [f"base {v} {a}" for v, a in sorted(gr.bases.items())]
    return "".join(line + "\n" for line in lines)


# -- subcommands ------------------------------------------------------------


def cmd_check(args: argparse.Namespace) -> int:
    result = grade(_load_arrowed(args.input))
    if isinstance(result, NotGradable):
        _emit(args, grade_result_json(result), f"not gradable: {result.describe()}\n")
        return 1
    _emit(args, grade_result_json(result), "gradable\n" + _grading_text(result))
    return 0


def cmd_grade(args: argparse.Namespace) -> int:
    result = grade(_load_arrowed(args.input))
    if isinstance(result, NotGradable):
        _emit(args, grade_result_json(result), "")
        sys.stderr.write(f"not gradable: {result.describe()}\n")
        return 1
    _emit(args, grading_json(result), _grading_text(result))
    return 0


def cmd_oracle_grade(args: argparse.Namespace) -> int:
    result = oracle_mod.oracle_gradable(_load_arrowed(args.input))
    if isinstance(result, NotGradable):
        _emit(args, {"gradable": False}, "not gradable\n")
        return 1
    _emit(args, {"gradable": True, **grading_json(result)}, "gradable\n" + _grading_text(result))
    return 0


def cmd_arcs(args: argparse.Namespace) -> int:
    g = _load(args.input)
    payload = arcs_json(g)
    lines = []
    for a in payload["arcs"]:
        lines.append(f"{a['kind']} {len(a['edges'])} " + " ".join(a["edges"]))
    for p in payload["closed_arc_parities"]:
        lines.append(f"closed-arc {p['length']} {p['parity']} " + " ".join(p["edges"]))
    lines.append(f"circles {payload['circles']}")
    _emit(args, payload, "".join(line + "\n" for line in lines))
    return 0


def cmd_lift(args: argparse.Namespace) -> int:
    g = _load(args.input)
    if not isinstance(g, DaisyGraph):
        raise UsageError("expected plain DG")
    result = short_grade_lift(g)
    if isinstance(result, NotLiftable):
        odd = [list(a.edges) for a in result.odd_arcs]
        _emit(args, {"liftable": False, "odd_arcs": odd}, "")
        sys.stderr.write(f"not liftable: {result.describe()}\n")
        return 1
    doc = serialize(result.adg)
    _emit(args, {"liftable": True, "document": doc, **grading_json(result.grading)}, doc)
    return 0


def cmd_realizable(args: argparse.Namespace) -> int:
    verdict = decide_realizable(_load_arrowed(args.input), ManifoldClass(args.manifold))
    text = ("realizable" if verdict.realizable else "not realizable") + \
        (": " + ", ".join(verdict.reasons) if verdict.reasons else "") + "\n"
    _emit(args, verdict_json(verdict), text)
    return 0 if verdict.realizable else 1


def cmd_euler(args: argparse.Namespace) -> int:
    if args.t < 0 or args.b < 0:
        raise UsageError("--t and --b must be non-negative")
    value = euler_char_of_image(args.chi_f, args.t, args.b)
    _emit(args, {"chi_f": args.chi_f, "t": args.t, "b": args.b, "value": str(value),
                 "numerator": value.numerator, "denominator": value.denominator}, f"{value}\n")
    return 0


def cmd_export_dot(args: argparse.Namespace) -> int:
    dot = export_dot(_load(args.input))
    _emit(args, {"dot": dot}, dot)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    if args.chain:
        g = oracle_mod.random_chain(args.seed, args.triples)
    else:
        g = oracle_mod.random_instance(args.seed, triples=args.triples, leaves=args.leaves, db=args.db,
                                       circles=args.circles, forest=args.forest, gradable=args.gradable)
    doc = serialize(g)
    _emit(args, {"seed": args.seed, "document": doc}, doc)
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    spec = oracle_mod.EnumerationSpec(
        max_triple_vertices=args.max_triples,
        min_triple_vertices=args.min_triples,
        pendant_completion=not args.no_pendants,
        allow_loops=not args.no_loops,
        db_variants=args.db_variants,
    )
    rows = list(oracle_mod.run_census(spec, cross_check=not args.no_oracle, workers=args.workers))
    disagreements = [r.instance_id for r in rows if r.oracle_agrees is False]
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            oracle_mod.write_census_csv(rows, fh)
    elif not args.json:
        oracle_mod.write_census_csv(rows, sys.stdout)
    summary = {
        "instances": len(rows),
        "gradable": sum(r.gradable for r in rows),
        "oracle_checked": not args.no_oracle,
        "oracle_disagreements": disagreements[:20],
        "oracle_disagreement_count": len(disagreements),
    }
    if args.json:
        sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    else:
        sys.stderr.write(f"{summary['instances']} instances, {summary['gradable']} gradable, "
                         f"{len(disagreements)} oracle disagreements\n")
    return 1 if disagreements else 0


# -- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="daisygraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, needs_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        if needs_input:
            p.add_argument("input", nargs="?", default="-", help="document path, or - for stdin (default)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "gradability verdict with evidence")
    add("grade", cmd_grade, "print the normalized grading")
    add("oracle-grade", cmd_oracle_grade, "grade by exhaustive search (at most 12 edges)")
    add("arcs", cmd_arcs, "double-arc decomposition and closed-arc parities")
    add("lift", cmd_lift, "short-grading lift of a plain dg to an adg")
    p = add("realizable", cmd_realizable, "realizability verdict for a manifold class")
    p.add_argument("--manifold", required=True, choices=[m.value for m in ManifoldClass])
    p = add("euler", cmd_euler, "Euler characteristic of the image surface", needs_input=False)
    p.add_argument("--chi-f", type=int, required=True)
    p.add_argument("--t", type=int, required=True, help="number of triple values")
    p.add_argument("--b", type=int, required=True, help="number of branch values")
    add("export-dot", cmd_export_dot, "Graphviz DOT rendering")
    p = add("gen", cmd_gen, "seeded random adg document", needs_input=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--triples", type=int, default=3)
    p.add_argument("--leaves", type=int, default=None)
    p.add_argument("--db", type=int, default=0)
    p.add_argument("--circles", type=int, default=0)
    p.add_argument("--forest", action="store_true")
    p.add_argument("--gradable", action="store_true")
    p.add_argument("--chain", action="store_true", help="gradable chain of triple vertices")
    p = add("census", cmd_census, "exhaustive census as CSV with oracle cross-check", needs_input=False)
    p.add_argument("--max-triples", type=int, default=1)
    p.add_argument("--min-triples", type=int, default=0)
    p.add_argument("--no-pendants", action="store_true", help="only saturated multigraphs")
    p.add_argument("--no-loops", action="store_true")
    p.add_argument("--db-variants", action="store_true", help="also emit each instance with one DB vertex")
    p.add_argument("--no-oracle", action="store_true", help="skip the brute-force cross-check")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", help="write CSV here instead of stdout")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        for d in exc.diagnostics:
            sys.stderr.write(f"error: {d}\n")
        return 2
    except (UsageError, oracle_mod.OracleRefusal, DaisyError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
