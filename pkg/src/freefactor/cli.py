"""Command-line driver: one subcommand per library operation.

Every subcommand prints a human-readable summary to stdout and, with
``--out PATH``, writes a full JSON document.  Exit codes: 0 on success
(and zero violations for experiments), 1 on domain errors, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DomainError, InternalContradictionError
from .experiments import EXPERIMENT_NAMES, run_experiment
from .factors import FreeFactorVertex, factor_invariant
from .farey import Slope, farey_distance
from .trees import geometric_index
from .whitehead import (
    Classification,
    classify,
    find_cut_vertex,
    minimize_cyclic_length,
    whitehead_graph,
)
from .words import Word, b_reduced_decomposition, format_word, parse_word

SCHEMA_VERSION = 1


def _emit(args, text: str, payload: dict) -> None:
    print(text)
    if getattr(args, "out", None):
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        with open(args.out, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")


def _cmd_reduce(args) -> int:
    w = parse_word(args.word, args.n)
    _emit(args, format_word(w), {"command": "reduce", "word": format_word(w),
                                 "length": len(w), "rank": args.n})
    return 0


def _certificate_payload(cert) -> dict:
    return cert.to_json_dict()


def _cmd_classify(args) -> int:
    w = parse_word(args.word, args.n)
    cert = minimize_cyclic_length(w)
    verdict = classify(w)
    cut = None
    if len(cert.minimized) >= 1:
        cut_vertex = find_cut_vertex(whitehead_graph(cert.minimized))
        if cut_vertex is not None:
            cut = format_word(Word((cut_vertex,), args.n))
    label = {
        Classification.PRIMITIVE: "Primitive",
        Classification.SIMPLE_NON_PRIMITIVE: "SimpleNonPrimitive",
        Classification.FILLING: "Filling",
    }[verdict]
    _emit(
        args,
        label,
        {
            "command": "classify",
            "verdict": label,
            "cut_vertex": cut,
            **_certificate_payload(cert),
        },
    )
    return 0


def _cmd_minimize(args) -> int:
    w = parse_word(args.word, args.n)
    cert = minimize_cyclic_length(w)
    _emit(
        args,
        f"{format_word(cert.minimized)} (length {len(cert.minimized)}, "
        f"{len(cert.chain)} moves)",
        {"command": "minimize", **_certificate_payload(cert)},
    )
    return 0


def _cmd_index(args) -> int:
    b = parse_word(args.b, args.n)
    w = parse_word(args.word, args.n)
    dec = b_reduced_decomposition(w, b)
    payload = {
        "command": "index",
        "b": format_word(b),
        "word": format_word(w),
        "k": dec.k,
        "core": format_word(dec.core),
    }
    text = f"k = {dec.k}"
    if args.geometric:
        geo = geometric_index(w, b)
        if geo != dec.k:
            raise InternalContradictionError(
                f"geometric index {geo} != combinatorial index {dec.k}"
            )
        payload["geometric_k"] = geo
        text = f"k = {dec.k} (geometric agrees)"
    _emit(args, text, payload)
    return 0


def _cmd_factor_invariant(args) -> int:
    b = parse_word(args.b, args.n)
    gens = tuple(parse_word(g, args.n) for g in args.gen)
    vertex = FreeFactorVertex(gens, args.n)
    est = factor_invariant(vertex, b, args.budget)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(vertex.graph.to_dot() + "\n")
    _emit(
        args,
        f"value = {est.value} ({'tight' if est.tight else 'slack'}, "
        f"{est.samples} samples)",
        {
            "command": "factor-invariant",
            "b": format_word(b),
            "generators": [format_word(g) for g in gens],
            "value": est.value,
            "tight": est.tight,
            "samples": est.samples,
        },
    )
    return 0


def _cmd_farey_dist(args) -> int:
    s = Slope.from_string(args.s)
    t = Slope.from_string(args.t)
    d = farey_distance(s, t)
    _emit(
        args,
        str(d),
        {"command": "farey-dist", "s": str(s), "t": str(t), "distance": d},
    )
    return 0


def _cmd_experiment(args) -> int:
    kwargs = {
        "rank": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "radius": args.radius,
        "k_lo": args.k_lo,
        "k_hi": args.k_hi,
        "sample_budget": args.budget,
    }
    if args.b:
        kwargs["b"] = parse_word(args.b, args.n or 2)
    if args.word:
        kwargs["a"] = parse_word(args.word, args.n or 2)
    report = run_experiment(args.name, **kwargs)
    print(
        f"{report.name}: {len(report.trials)} records, "
        f"{report.violations} violations"
    )
    for key, value in sorted(report.summary.items()):
        if not isinstance(value, (list, dict)):
            print(f"  {key}: {value}")
    if args.out:
        report.write_json(args.out)
    if args.csv:
        report.write_csv(args.csv)
    return 0 if report.violations == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freefactor",
        description=(
            "Exact computation with free-group words, Whitehead graphs, "
            "core graphs and Farey-graph geometry."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_b=False):
        p.add_argument("--n", type=int, default=2, help="ambient rank (default 2)")
        p.add_argument("--out", help="write a JSON report to this path")
        if needs_b:
            p.add_argument("--b", required=True, help="base word b")

    p = sub.add_parser("reduce", help="freely reduce a word")
    p.add_argument("word")
    add_common(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("classify", help="primitive / simple / filling verdict")
    p.add_argument("word")
    add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("minimize", help="minimal cyclic length certificate")
    p.add_argument("word")
    add_common(p)
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("index", help="balanced-b exponent of a word")
    p.add_argument("word")
    add_common(p, needs_b=True)
    p.add_argument(
        "--geometric",
        action="store_true",
        help="also compute the axis-projection index and assert equality",
    )
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("factor-invariant", help="invariant of a free factor")
    add_common(p, needs_b=True)
    p.add_argument(
        "--gen", action="append", required=True, help="factor generator (repeatable)"
    )
    p.add_argument("--budget", type=int, default=None, help="sampling budget")
    p.add_argument("--dot", help="write the folded core graph as DOT text")
    p.set_defaults(func=_cmd_factor_invariant)

    p = sub.add_parser("farey-dist", help="exact Farey graph distance")
    p.add_argument("s", help="slope p/q")
    p.add_argument("t", help="slope p/q")
    p.add_argument("--out", help="write a JSON report to this path")
    p.set_defaults(func=_cmd_farey_dist)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("name", choices=EXPERIMENT_NAMES)
    p.add_argument("--n", type=int, default=None, help="ambient rank")
    p.add_argument("--b", default=None, help="base word (default per rank)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=8, help="grid radius")
    p.add_argument("--word", default=None, help="probe word (zero-fiber)")
    p.add_argument("--k-lo", type=int, default=-10)
    p.add_argument("--k-hi", type=int, default=10)
    p.add_argument("--budget", type=int, default=None, help="sampling budget")
    p.add_argument("--out", help="write the JSON report to this path")
    p.add_argument("--csv", help="write the per-trial trace to this path")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
