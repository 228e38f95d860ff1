"""Labeled multigraph core: graphs, walks, path pairs and XOR label arithmetic.

Labels are elements of GF(2)^k stored as plain ints (bit i = coordinate i).
Every element is its own inverse, so edge orientation never matters and the
label of a walk is the XOR of its edge labels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidWalk, NotACycle, TargetNotOnPath

PAIR_STRAIGHT = "X1Y1_X2Y2"
PAIR_CROSS_A = "X1X2_Y1Y2"
PAIR_CROSS_B = "X1Y2_Y1X2"


def label_bits(label: int, k: int) -> str:
    """Fixed-width bit string for a label, most significant bit first."""
    return format(label, "0{}b".format(k))


class LabeledMultigraph:
    """Undirected multigraph with k-bit XOR labels on the edges.

    Vertices are 0..n-1 and edges carry dense 0-based ids in insertion
    order.  Parallel edges are allowed and stay distinct; self-loops are
    rejected.  Adjacency lists are sorted by edge id, which is what makes
    every traversal in the package deterministic.  Instances are treated
    as immutable after construction.
    """

    __slots__ = ("n", "k", "edge_u", "edge_v", "edge_label", "adj")

    def __init__(self, n: int, k: int, edges):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if not 1 <= k <= 64:
            raise ValueError("label dimension k must be in 1..64")
        self.n = n
        self.k = k
        eu = []
        ev = []
        el = []
        adj = [[] for _ in range(n)]
        limit = 1 << k
        for u, v, label in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge endpoint out of range: ({}, {})".format(u, v))
            if u == v:
                raise ValueError("self-loops are not allowed (vertex {})".format(u))
            if not 0 <= label < limit:
                raise ValueError("label {} does not fit in {} bits".format(label, k))
            eid = len(eu)
            eu.append(u)
            ev.append(v)
            el.append(label)
            adj[u].append(eid)
            adj[v].append(eid)
        self.edge_u = eu
        self.edge_v = ev
        self.edge_label = el
        self.adj = adj

    @classmethod
    def from_arrays(cls, n, k, edge_u, edge_v, edge_label):
        """Trusted fast constructor from parallel arrays (no validation)."""
        self = cls.__new__(cls)
        self.n = n
        self.k = k
        self.edge_u = edge_u
        self.edge_v = edge_v
        self.edge_label = edge_label
        m = len(edge_u)
        if m >= 65536:
            # bulk adjacency: one stable sort of both endpoint columns,
            # keyed so每 vertex's edges come out in ascending edge id
            import numpy as np

            ends = np.empty(2 * m, dtype=np.int64)
            ends[:m] = edge_u
            ends[m:] = edge_v
            eids = np.empty(2 * m, dtype=np.int64)
            eids[:m] = np.arange(m)
            eids[m:] = np.arange(m)
            order = np.argsort(ends * (2 * m) + eids, kind="stable")
            sorted_ends = ends[order]
            sorted_eids = eids[order].tolist()
            bounds = np.searchsorted(sorted_ends, np.arange(n + 1)).tolist()
            adj = [
                sorted_eids[bounds[v] : bounds[v + 1]] for v in range(n)
            ]
        else:
            adj = [[] for _ in range(n)]
            for e, u in enumerate(edge_u):
                adj[u].append(e)
                adj[edge_v[e]].append(e)
        self.adj = adj
        return self

    @property
    def m(self) -> int:
        return len(self.edge_u)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edge_u[e], self.edge_v[e]

    def other_end(self, e: int, v: int) -> int:
        u = self.edge_u[e]
        return self.edge_v[e] if u == v else u

    def edge_tuples(self):
        """Iterate (u, v, label) in edge id order."""
        for e in range(len(self.edge_u)):
            yield self.edge_u[e], self.edge_v[e], self.edge_label[e]

    def __repr__(self):
        return "LabeledMultigraph(n={}, m={}, k={})".format(self.n, self.m, self.k)


@dataclass(frozen=True)
class Walk:
    """A walk as a start vertex plus (edge id, head vertex) steps.

    Storing the head of every step makes the vertex sequence self contained;
    validity against a graph is checked separately by :func:`check_walk`.
    """

    start: int
    steps: tuple[tuple[int, int], ...] = ()

    def __len__(self):
        return len(self.steps)

    @property
    def end(self) -> int:
        return self.steps[-1][1] if self.steps else self.start

    def vertices(self) -> list[int]:
        out = [self.start]
        out.extend(head for _, head in self.steps)
        return out

    def edge_ids(self) -> list[int]:
        return [e for e, _ in self.steps]

    def is_path(self) -> bool:
        seq = self.vertices()
        return len(set(seq)) == len(seq)

    def is_cycle(self) -> bool:
        if len(self.steps) < 2:
            return False
        seq = self.vertices()
        if seq[0] != seq[-1]:
            return False
        if self.steps[0][0] == self.steps[-1][0]:
            return False
        inner = seq[1:]
        return len(set(inner)) == len(inner)

    def reversed(self) -> "Walk":
        seq = self.vertices()
        steps = tuple(
            (self.steps[i][0], seq[i]) for i in range(len(self.steps) - 1, -1, -1)
        )
        return Walk(self.end, steps)

    def concat(self, other: "Walk") -> "Walk":
        if self.end != other.start:
            raise InvalidWalk("cannot concatenate: {} != {}".format(self.end, other.start))
        return Walk(self.start, self.steps + other.steps)


def walk_from_edges(g: LabeledMultigraph, start: int, edge_ids) -> Walk:
    """Build a walk from consecutive edge ids, inferring head vertices."""
    steps = []
    cur = start
    for e in edge_ids:
        u, v = g.endpoints(e)
        if cur == u:
            cur = v
        elif cur == v:
            cur = u
        else:
            raise InvalidWalk("edge {} not incident to vertex {}".format(e, cur))
        steps.append((e, cur))
    return Walk(start, tuple(steps))


def check_walk(g: LabeledMultigraph, w: Walk) -> None:
    """Raise InvalidWalk unless w is incidence-consistent in g."""
    if not 0 <= w.start < g.n:
        raise InvalidWalk("start vertex {} out of range".format(w.start))
    cur = w.start
    m = g.m
    for e, head in w.steps:
        if not 0 <= e < m:
            raise InvalidWalk("edge id {} out of range".format(e))
        u, v = g.endpoints(e)
        if cur == u and head == v:
            cur = v
        elif cur == v and head == u:
            cur = u
        else:
            raise InvalidWalk(
                "step ({}, {}) not incident at vertex {}".format(e, head, cur)
            )


def walk_label(g: LabeledMultigraph, w: Walk) -> int:
    """XOR of the labels of all traversed edges, with multiplicity."""
    check_walk(g, w)
    label = 0
    el = g.edge_label
    for e, _ in w.steps:
        label ^= el[e]
    return label


def canonicalize_cycle(g: LabeledMultigraph, c: Walk) -> Walk:
    """Rotate a cycle to start at its minimum vertex, direction by edge id.

    Of the two traversal directions from the minimum vertex, the one whose
    first edge id is smaller wins.  The edge multiset and label are
    unchanged; the operation is idempotent.
    """
    check_walk(g, c)
    if not c.is_cycle():
        raise NotACycle("walk is not a cycle")
    seq = c.vertices()[:-1]  # one entry per cycle vertex
    pivot = seq.index(min(seq))
    steps = c.steps
    rotated = steps[pivot:] + steps[:pivot]
    forward = Walk(seq[pivot], rotated)
    backward = forward.reversed()
    if backward.steps[0][0] < forward.steps[0][0]:
        return backward
    return forward


def first_hit_prefix(g: LabeledMultigraph, q: Walk, targets) -> Walk:
    """Minimal prefix of a path that ends in `targets` and meets it once."""
    check_walk(g, q)
    tset = targets if isinstance(targets, (set, frozenset)) else set(targets)
    if q.start in tset:
        return Walk(q.start)
    for i, (_, head) in enumerate(q.steps):
        if head in tset:
            return Walk(q.start, q.steps[: i + 1])
    raise TargetNotOnPath("path never meets the target set")


@dataclass(frozen=True)
class PathPair:
    """Two vertex-disjoint paths connecting the four marked endpoints.

    ``pairing`` records which of the three endpoint pairings the pair
    realizes; the two crossing pairings are the ones that close into a
    single cycle once the target edges are appended.
    """

    first: Walk
    second: Walk
    pairing: str

    def label(self, g: LabeledMultigraph) -> int:
        return walk_label(g, self.first) ^ walk_label(g, self.second)


def classify_pairing(p1: Walk, p2: Walk, x1: int, y1: int, x2: int, y2: int) -> str:
    """Name the pairing realized by two paths over {x1,y1,x2,y2}."""
    ends1 = {p1.start, p1.end}
    ends2 = {p2.start, p2.end}
    if ends1 == {x1, y1} and ends2 == {x2, y2}:
        return PAIR_STRAIGHT
    if ends1 == {x2, y2} and ends2 == {x1, y1}:
        return PAIR_STRAIGHT
    if ends1 == {x1, x2} and ends2 == {y1, y2}:
        return PAIR_CROSS_A
    if ends1 == {y1, y2} and ends2 == {x1, x2}:
        return PAIR_CROSS_A
    if ends1 == {x1, y2} and ends2 == {y1, x2}:
        return PAIR_CROSS_B
    if ends1 == {y1, x2} and ends2 == {x1, y2}:
        return PAIR_CROSS_B
    raise ValueError("paths do not realize a pairing of the four endpoints")


def make_path_pair(
    g: LabeledMultigraph, p1: Walk, p2: Walk, x1: int, y1: int, x2: int, y2: int
) -> PathPair:
    """Validate two paths as a path pair and tag their pairing."""
    check_walk(g, p1)
    check_walk(g, p2)
    if not (p1.is_path() and p2.is_path()):
        raise InvalidWalk("path pair members must be simple paths")
    if set(p1.vertices()) & set(p2.vertices()):
        raise InvalidWalk("path pair members must be vertex-disjoint")
    return PathPair(p1, p2, classify_pairing(p1, p2, x1, y1, x2, y2))
