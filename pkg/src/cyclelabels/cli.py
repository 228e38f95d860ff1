"""Command line interface.

Subcommands: ``solve`` runs every query of a graph file, ``oracle`` answers
the same queries by brute force (small graphs only), ``gen`` writes a random
biconnected instance, ``bench`` prints size/median-time pairs for the
two-edge solver.  Exit codes: 0 ok, 1 parse error, 2 invalid query.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time

from .errors import InvalidQuery, NoCommonBlock, NoPath, ParseError
from .fileio import (
    Query,
    generate_random_biconnected,
    parse_graph_file,
    write_dot,
    write_graph_file,
)
from .graph import LabeledMultigraph, Walk, label_bits
from .oracle import enumerate_cycle_labels
from .solver import (
    cycle_three_vertices,
    odd_cycle_two_vertices,
    solve_two_edges,
    solve_two_vertices,
)


def format_cycle(walk: Walk) -> str:
    parts = [str(walk.start)]
    for e, head in walk.steps:
        parts.append("e{}".format(e))
        parts.append(str(head))
    return ",".join(parts)


def _answer_query(g: LabeledMultigraph, q: Query) -> str:
    q.validate(g)
    if q.kind in ("V", "E"):
        try:
            if q.kind == "V":
                out = solve_two_vertices(g, *q.ids)
            else:
                out = solve_two_edges(g, *q.ids)
        except NoCommonBlock:
            return "NONE"
        k = g.k
        if out.kind == "unique":
            return "UNIQUE {} {}".format(
                label_bits(out.labels[0], k), format_cycle(out.witnesses[0])
            )
        return "TWO {} {} {} {}".format(
            label_bits(out.labels[0], k),
            format_cycle(out.witnesses[0]),
            label_bits(out.labels[1], k),
            format_cycle(out.witnesses[1]),
        )
    if q.kind == "ODD":
        try:
            res = odd_cycle_two_vertices(g, *q.ids)
        except NoCommonBlock:
            return "NONE"
        if res.odd is not None:
            return "ODD {}".format(format_cycle(res.odd))
        return "EVEN {}".format(format_cycle(res.even))
    # THREE
    cyc = cycle_three_vertices(g, *q.ids)
    if cyc is None:
        return "NONE"
    return "CYCLE {}".format(format_cycle(cyc))


def _answer_query_oracle(g: LabeledMultigraph, q: Query) -> str:
    q.validate(g)
    k = g.k
    if q.kind in ("V", "E"):
        if q.kind == "V":
            found = enumerate_cycle_labels(g, through_vertices=q.ids)
        else:
            found = enumerate_cycle_labels(g, through_edges=q.ids)
        labels = found.labels
        if not labels:
            return "NONE"
        if len(labels) == 1:
            lab = labels[0]
            return "UNIQUE {} {}".format(
                label_bits(lab, k), format_cycle(found.witnesses[lab])
            )
        a, b = labels[0], labels[1]
        return "TWO {} {} {} {}".format(
            label_bits(a, k),
            format_cycle(found.witnesses[a]),
            label_bits(b, k),
            format_cycle(found.witnesses[b]),
        )
    ones = LabeledMultigraph(g.n, 1, [(u, v, 1) for u, v, _ in g.edge_tuples()])
    if q.kind == "ODD":
        found = enumerate_cycle_labels(ones, through_vertices=q.ids)
        if 1 in found.witnesses:
            return "ODD {}".format(format_cycle(found.witnesses[1]))
        if 0 in found.witnesses:
            return "EVEN {}".format(format_cycle(found.witnesses[0]))
        return "NONE"
    x, y, z = q.ids
    found = enumerate_cycle_labels(g, through_vertices=(x, y, z))
    if not found.witnesses:
        return "NONE"
    best = found.witnesses[found.labels[0]]
    return "CYCLE {}".format(format_cycle(best))


def _cmd_solve(args) -> int:
    try:
        text = open(args.file).read()
    except OSError as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return 1
    try:
        g, queries = parse_graph_file(text)
    except ParseError as exc:
        print("parse error: {}".format(exc), file=sys.stderr)
        return 1
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(write_dot(g))
    answer = _answer_query_oracle if args.brute else _answer_query
    for q in queries:
        try:
            print(answer(g, q))
        except InvalidQuery as exc:
            print("invalid query: {}".format(exc), file=sys.stderr)
            return 2
        except ValueError as exc:
            print("error: {}".format(exc), file=sys.stderr)
            return 2
    return 0


def _cmd_gen(args) -> int:
    g = generate_random_biconnected(args.n, args.m, args.k, args.seed)
    rng = random.Random(args.seed ^ 0x5EED)
    queries = []
    for _ in range(args.queries):
        if rng.random() < 0.5:
            s, t = rng.sample(range(g.n), 2)
            queries.append(Query("V", (s, t)))
        else:
            a, b = rng.sample(range(g.m), 2)
            queries.append(Query("E", (a, b)))
    text = write_graph_file(g, queries)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    for i, m in enumerate(sizes):
        n = max(4, m // 3)
        g = generate_random_biconnected(n, m, args.k, args.seed + i)
        rng = random.Random(args.seed + 1000 + i)
        e1, e2 = _disjoint_edge_pair(g, rng)
        times = []
        for _ in range(args.runs):
            t0 = time.perf_counter()
            out = solve_two_edges(g, e1, e2)
            times.append(time.perf_counter() - t0)
        med = statistics.median(times)
        print("{} {:.6f} {}".format(m, med, out.kind))
        sys.stdout.flush()
    return 0


def _disjoint_edge_pair(g, rng):
    while True:
        e1, e2 = rng.sample(range(g.m), 2)
        if not set(g.endpoints(e1)) & set(g.endpoints(e2)):
            return e1, e2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cyclelabels",
        description="one or two cycle labels through two targets in a labeled multigraph",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="answer the queries in a graph file")
    p_solve.add_argument("file")
    p_solve.add_argument("--dot", help="also write a DOT rendering of the graph")
    p_solve.add_argument("--brute", action="store_true", help=argparse.SUPPRESS)
    p_solve.set_defaults(func=_cmd_solve)

    p_oracle = sub.add_parser("oracle", help="answer queries by brute force (n <= 12)")
    p_oracle.add_argument("file")
    p_oracle.add_argument("--dot", default=None, help=argparse.SUPPRESS)
    p_oracle.set_defaults(func=_cmd_solve, brute=True)

    p_gen = sub.add_parser("gen", help="generate a random biconnected instance")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--k", type=int, default=1)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--queries", type=int, default=0)
    p_gen.add_argument("-o", "--output")
    p_gen.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="print size / median-time pairs")
    p_bench.add_argument("--sizes", required=True, help="comma separated edge counts")
    p_bench.add_argument("--k", type=int, default=8)
    p_bench.add_argument("--runs", type=int, default=5)
    p_bench.add_argument("--seed", type=int, default=1)
    p_bench.set_defaults(func=_cmd_bench)

    args = parser.parse_args(argv)
    if getattr(args, "brute", None) is None:
        args.brute = False
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
