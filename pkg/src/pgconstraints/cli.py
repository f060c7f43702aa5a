"""Command-line entry point (``pgc``).

Exit codes: 0 satisfied/agree/success, 1 witness check mismatch,
2 violated, 3 disagree, 64 usage error, 65 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constraints import classify, parse_constraints, print_constraint
from .equiv import EnumSpec, differential_check, spec_for
from .errors import (
    GraphError,
    KindMismatch,
    MalformedConstraint,
    MalformedQuery,
    ParseError,
    TranslationError,
    WitnessParameterError,
)
from .graph import graph_from_json, graph_to_json
from .matcher import find_matches
from .syntax import parse_predicates, parse_query
from .translate import RULES, apply_rule
from .validator import validate
from .witnesses import WITNESSES, make_witness

EXIT_OK, EXIT_MISMATCH, EXIT_VIOLATED, EXIT_DISAGREE = 0, 1, 2, 3
EXIT_USAGE, EXIT_PARSE = 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load_graph(path):
    try:
        return graph_from_json(_read(path))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON: {e}") from None


def _load_constraints(path):
    cs = parse_constraints(_read(path))
    if not cs:
        raise ParseError(f"{path}: no constraints")
    return cs


def _label(c, i):
    return c.name or f"#{i}"


def _emit(args, obj, text):
    out = json.dumps(obj, ensure_ascii=False, indent=2) if args.format == "json" else text
    if getattr(args, "out", None):
        Path(args.out).write_text(out + "\n", encoding="utf-8")
    else:
        print(out)


def _fmt_match(m):
    return "{" + ", ".join(f"{k}↦{v}" for k, v in m.to_json().items()) + "}"


# ----------------------------------------------------------------------
# commands


def cmd_validate(args):
    graph = _load_graph(args.graph)
    cs = _load_constraints(args.constraints)
    verdicts = [validate(graph, c, args.budget, args.exhaustive) for c in cs]
    lines = []
    for i, (c, v) in enumerate(zip(cs, verdicts)):
        lines.append(f"{_label(c, i)}: {v.status}")
        for w in v.witnesses:
            for role, m in w.matches:
                lines.append(f"  {w.kind} {role} {_fmt_match(m)}")
    _emit(args, [v.to_json() for v in verdicts], "\n".join(lines))
    return EXIT_VIOLATED if any(v.violated for v in verdicts) else EXIT_OK


def cmd_classify(args):
    cs = _load_constraints(args.constraints)
    rows = []
    for i, c in enumerate(cs):
        rows.append({"constraint": _label(c, i), **classify(c).to_json()})
    text = "\n".join(
        f"{r['constraint']}: {r['formalism']} shared={r['shared']} family={r['family']} "
        f"path_mode={r['path_mode']}" + (f" keywords={','.join(r['keywords'])}" if r["keywords"] else "")
        for r in rows
    )
    _emit(args, rows, text)
    return EXIT_OK


def cmd_translate(args):
    cs = _load_constraints(args.constraints)
    reports = [apply_rule(args.rule, c) for c in cs]
    text = "\n".join(print_constraint(o) for r in reports for o in r.outputs)
    _emit(args, [r.to_json() for r in reports], text)
    return EXIT_OK


def _load_spec(path, constraints):
    if path is None:
        return spec_for(constraints)
    try:
        obj = json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON: {e}") from None
    try:
        return EnumSpec.from_json(obj)
    except (ValueError, TypeError) as e:
        raise ParseError(f"{path}: {e}") from None


def cmd_equiv(args):
    left = _load_constraints(args.left)
    right = _load_constraints(args.right)
    spec = _load_spec(args.spec, left + right)
    rep = differential_check(left, right, spec, args.budget, args.exhaustive, reduce=not args.no_reduce)
    if rep.agree:
        text = f"agree on {rep.graphs_checked} graphs"
    else:
        g, a, b = rep.first_disagreement
        text = (
            f"disagree after {rep.graphs_checked} graphs: left {a.status}, right {b.status}\n"
            f"graph {graph_to_json(g)}"
        )
    _emit(args, rep.to_json(), text)
    return EXIT_OK if rep.agree else EXIT_DISAGREE


def _param(text):
    if "=" not in text:
        raise UsageError(f"--param expects name=value, got {text!r}")
    k, v = text.split("=", 1)
    low = v.lower()
    if low in ("true", "false"):
        return k, low == "true"
    try:
        return k, int(v)
    except ValueError:
        return k, v


def cmd_witness(args):
    try:
        bundle = make_witness(args.name, **dict(args.param))
    except TypeError as e:
        raise UsageError(str(e)) from None
    obj = {
        "name": bundle.name,
        "provenance": bundle.provenance,
        "params": bundle.params,
        "constraints": [print_constraint(c) for c in bundle.constraints],
        "expected": [list(e) for e in bundle.expected],
        "stats": bundle.stats(),
    }
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "g1.json").write_text(graph_to_json(bundle.g1) + "\n", encoding="utf-8")
        (d / "g2.json").write_text(graph_to_json(bundle.g2) + "\n", encoding="utf-8")
        (d / "constraints.pgc").write_text("\n".join(obj["constraints"]) + "\n", encoding="utf-8")
    else:
        obj["g1"] = bundle.g1.to_dict()
        obj["g2"] = bundle.g2.to_dict()
    lines = [f"{bundle.name}: {bundle.provenance}"] + [f"  {c}" for c in obj["constraints"]]
    lines.append(f"  g1 {obj['stats']['g1']}, g2 {obj['stats']['g2']}")
    code = EXIT_OK
    if args.check:
        results = bundle.check(args.budget)
        obj["check"] = [
            {"constraint": _label(c, i), "g1": v1.status, "g2": v2.status, "ok": ok}
            for i, (c, (v1, v2), ok) in enumerate(results)
        ]
        for r in obj["check"]:
            lines.append(f"  check {r['constraint']}: g1 {r['g1']}, g2 {r['g2']} -> {'ok' if r['ok'] else 'MISMATCH'}")
        if not all(r["ok"] for r in obj["check"]):
            code = EXIT_MISMATCH
    _emit(args, obj, "\n".join(lines))
    return code


def cmd_matches(args):
    graph = _load_graph(args.graph)
    q = parse_query(args.query)
    preds = parse_predicates(args.where) if args.where else ()
    ms = find_matches(graph, q, preds, args.budget)
    _emit(args, [m.to_json() for m in ms], "\n".join(_fmt_match(m) for m in ms) or "(no matches)")
    return EXIT_OK


# ----------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="pgc", description="Validate, translate and compare property-graph constraints.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None, help="walk length bound for path atoms")
    common.add_argument("--exhaustive", action="store_true", help="collect every violation / disagreement")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check constraints on a graph")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-c", "--constraints", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", parents=[common], help="report the fragment of each constraint")
    s.add_argument("-c", "--constraints", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("translate", parents=[common], help="apply a translation rule")
    s.add_argument("--rule", required=True, choices=sorted(RULES))
    s.add_argument("-c", "--constraints", "--in", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("equiv", parents=[common], help="differential check of two constraint files")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--spec", help="EnumSpec JSON (default: padded three-object space of both sides)")
    s.add_argument("--no-reduce", action="store_true", help="enumerate inert symbols too")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("witness", parents=[common], help="emit (and optionally check) a separation witness")
    s.add_argument("name", choices=sorted(WITNESSES))
    s.add_argument("--check", action="store_true")
    s.add_argument("--param", action="append", type=_param, default=[], metavar="NAME=VALUE")
    s.add_argument("--out-dir")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("matches", parents=[common], help="list the matches of a pattern")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-q", "--query", required=True)
    s.add_argument("--where")
    s.set_defaults(func=cmd_matches)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"pgc: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except WitnessParameterError as e:
        print(f"pgc: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, GraphError, MalformedQuery, MalformedConstraint, KindMismatch, TranslationError) as e:
        print(f"pgc: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PARSE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
