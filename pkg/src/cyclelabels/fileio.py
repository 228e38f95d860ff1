"""Graph file format, DOT export, and the biconnected instance generator.

Format: header ``k n m``, then m lines ``u v bits``, then query lines
``V s t`` / ``E i j`` / ``ODD s t`` / ``THREE x y z``.  Bit strings have
length k, most significant bit first.  Edge ids are assigned by line
order, 0-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidQuery, ParseError
from .graph import LabeledMultigraph, label_bits


@dataclass(frozen=True)
class Query:
    kind: str  # "V", "E", "ODD", "THREE"
    ids: tuple

    def validate(self, g: LabeledMultigraph) -> None:
        if self.kind == "E":
            a, b = self.ids
            if not (0 <= a < g.m and 0 <= b < g.m) or a == b:
                raise InvalidQuery("bad edge query {}".format(self.ids))
            return
        if self.kind in ("V", "ODD"):
            a, b = self.ids
            if not (0 <= a < g.n and 0 <= b < g.n) or a == b:
                raise InvalidQuery("bad vertex query {}".format(self.ids))
            return
        if self.kind == "THREE":
            if len(set(self.ids)) != 3 or not all(0 <= v < g.n for v in self.ids):
                raise InvalidQuery("bad three-vertex query {}".format(self.ids))
            return
        raise InvalidQuery("unknown query kind {}".format(self.kind))


_QUERY_ARITY = {"V": 2, "E": 2, "ODD": 2, "THREE": 3}


def parse_graph_file(text: str) -> tuple[LabeledMultigraph, list[Query]]:
    lines = text.splitlines()
    rows = [
        (i + 1, line.strip())
        for i, line in enumerate(lines)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not rows:
        raise ParseError("empty file", 1)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 3:
        raise ParseError("header must be 'k n m'", lineno)
    try:
        k, n, m = (int(p) for p in parts)
    except ValueError as exc:
        raise ParseError("header must hold three integers", lineno) from exc
    if not 1 <= k <= 64:
        raise ParseError("label dimension k out of range", lineno)
    if len(rows) < 1 + m:
        raise ParseError("expected {} edge lines".format(m), rows[-1][0])
    edges = []
    for lineno, line in rows[1 : 1 + m]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("edge line must be 'u v bits'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError("bad edge endpoints", lineno) from exc
        bits = parts[2]
        if len(bits) != k or any(c not in "01" for c in bits):
            raise ParseError("label must be a {}-bit string".format(k), lineno, 3)
        try:
            edges.append((u, v, int(bits, 2)))
        except ValueError as exc:
            raise ParseError("bad label bits", lineno) from exc
    try:
        g = LabeledMultigraph(n, k, edges)
    except ValueError as exc:
        raise ParseError(str(exc), rows[0][0]) from exc
    queries = []
    for lineno, line in rows[1 + m :]:
        parts = line.split()
        kind = parts[0].upper()
        if kind not in _QUERY_ARITY:
            raise ParseError("unknown query kind '{}'".format(parts[0]), lineno)
        if len(parts) != 1 + _QUERY_ARITY[kind]:
            raise ParseError(
                "query {} takes {} ids".format(kind, _QUERY_ARITY[kind]), lineno
            )
        try:
            ids = tuple(int(p) for p in parts[1:])
        except ValueError as exc:
            raise ParseError("query ids must be integers", lineno) from exc
        queries.append(Query(kind, ids))
    return g, queries


def write_graph_file(g: LabeledMultigraph, queries=()) -> str:
    out = ["{} {} {}".format(g.k, g.n, g.m)]
    for u, v, label in g.edge_tuples():
        out.append("{} {} {}".format(u, v, label_bits(label, g.k)))
    for q in queries:
        out.append("{} {}".format(q.kind, " ".join(str(i) for i in q.ids)))
    return "\n".join(out) + "\n"


def write_dot(g: LabeledMultigraph) -> str:
    lines = ["graph g {"]
    for v in range(g.n):
        lines.append("  {};".format(v))
    for e, (u, v, label) in enumerate(g.edge_tuples()):
        lines.append(
            '  {} -- {} [label="e{}:{}"];'.format(u, v, e, label_bits(label, g.k))
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def generate_random_biconnected(n: int, m: int, k: int, seed: int) -> LabeledMultigraph:
    """Deterministic random biconnected multigraph via ear decomposition.

    Starts from a cycle and keeps attaching ears (paths between existing
    vertices through fresh ones) until all n vertices are used, then adds
    chords (possibly parallel) up to m edges.
    """
    if n < 3:
        raise ValueError("need at least 3 vertices")
    if m < n:
        raise ValueError("need at least as many edges as vertices")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    # an ear costs one edge beyond its inner vertices, so at most m - n ears
    ears_allowed = m - n
    cyc_len = n if ears_allowed == 0 else rng.randrange(3, n + 1)
    cycle = perm[:cyc_len]
    rest = perm[cyc_len:]
    edges = [(cycle[i], cycle[(i + 1) % cyc_len]) for i in range(cyc_len)]
    used = list(cycle)
    ri = 0
    ears_done = 0
    while ri < len(rest):
        remaining = len(rest) - ri
        ears_left = ears_allowed - ears_done
        min_inner = max(1, -(-remaining // ears_left))
        inner = rest[ri : ri + rng.randrange(min_inner, remaining + 1)]
        ri += len(inner)
        ears_done += 1
        a = used[rng.randrange(len(used))]
        b = used[rng.randrange(len(used))]
        while b == a:
            b = used[rng.randrange(len(used))]
        chain = [a] + inner + [b]
        for x, y in zip(chain, chain[1:]):
            edges.append((x, y))
        used.extend(inner)
    while len(edges) < m:
        a = used[rng.randrange(len(used))]
        b = used[rng.randrange(len(used))]
        while b == a:
            b = used[rng.randrange(len(used))]
        edges.append((a, b))
    labeled = [(u, v, rng.randrange(1 << k)) for u, v in edges]
    return LabeledMultigraph(n, k, labeled)
