"""Shared helpers for the test suite: small random graphs and validators."""

from __future__ import annotations

import random

from cyclelabels.graph import LabeledMultigraph, Walk, check_walk, walk_label


def random_multigraph(rng: random.Random, n, m, k, connected=True, allow_parallel=True):
    """Random labeled multigraph; retries until connected when asked."""
    while True:
        edges = []
        for _ in range(m):
            u = rng.randrange(n)
            v = rng.randrange(n)
            while v == u:
                v = rng.randrange(n)
            if not allow_parallel:
                if any({u, v} == {a, b} for a, b, _ in edges):
                    continue
            edges.append((u, v, rng.randrange(1 << k)))
        g = LabeledMultigraph(n, k, edges)
        if not connected or _is_connected(g):
            return g


def random_biconnected(rng: random.Random, n, m, k, allow_parallel=True):
    """Small random biconnected multigraph built from a cycle plus ears."""
    assert n >= 3 and m >= n
    perm = list(range(n))
    rng.shuffle(perm)
    cyc_len = rng.randrange(3, n + 1)
    cycle = perm[:cyc_len]
    rest = perm[cyc_len:]
    edges = []
    for i, v in enumerate(cycle):
        edges.append((v, cycle[(i + 1) % cyc_len]))
    used = list(cycle)
    ri = 0
    while ri < len(rest):
        # ear with >= 1 internal new vertices between two used vertices
        max_inner = len(rest) - ri
        inner = rest[ri : ri + rng.randrange(1, max_inner + 1)]
        ri += len(inner)
        a = rng.choice(used)
        b = rng.choice(used)
        while b == a:
            b = rng.choice(used)
        chain = [a] + inner + [b]
        for x, y in zip(chain, chain[1:]):
            edges.append((x, y))
        used.extend(inner)
    while len(edges) < m:
        a = rng.choice(used)
        b = rng.choice(used)
        while b == a:
            b = rng.choice(used)
        if not allow_parallel and any({a, b} == {x, y} for x, y in edges):
            continue
        edges.append((a, b))
    labeled = [(u, v, rng.randrange(1 << k)) for u, v in edges[:m]]
    if len(labeled) < len(edges):
        labeled = [(u, v, rng.randrange(1 << k)) for u, v in edges]
    return LabeledMultigraph(n, k, labeled)


def _is_connected(g):
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for e in g.adj[v]:
            o = g.other_end(e, v)
            if o not in seen:
                seen.add(o)
                stack.append(o)
    return len(seen) == g.n


def assert_valid_cycle(g, walk: Walk, through_vertices=(), through_edges=(), label=None):
    check_walk(g, walk)
    assert walk.is_cycle(), "witness is not a cycle: {}".format(walk)
    verts = set(walk.vertices())
    eids = set(walk.edge_ids())
    assert len(eids) == len(walk.steps), "edge repeated in witness"
    for v in through_vertices:
        assert v in verts, "witness misses vertex {}".format(v)
    for e in through_edges:
        assert e in eids, "witness misses edge {}".format(e)
    if label is not None:
        assert walk_label(g, walk) == label


def assert_valid_path(g, walk: Walk, s, t, label=None):
    check_walk(g, walk)
    assert walk.is_path()
    assert walk.start == s and walk.end == t
    if label is not None:
        assert walk_label(g, walk) == label


def graph_with_shifts(rng, g):
    """Apply a random shift assignment; cycle labels are preserved."""
    from cyclelabels.labeling import ShiftAssignment

    shifts = tuple(rng.randrange(1 << g.k) for _ in range(g.n))
    return ShiftAssignment(shifts).apply(g)


def is_triconnected(g):
    """Brute-force vertex-connectivity >= 3 check for small graphs."""
    n = g.n
    if n < 4:
        return False
    simple = {frozenset((u, v)) for u, v, _ in g.edge_tuples()}
    adj = {v: set() for v in range(n)}
    for uv in simple:
        u, v = tuple(uv)
        adj[u].add(v)
        adj[v].add(u)
    for drop in ((), *((a, b) for a in range(n) for b in range(a + 1, n))):
        remaining = [v for v in range(n) if v not in drop]
        if not remaining:
            return False
        seen = {remaining[0]}
        stack = [remaining[0]]
        while stack:
            x = stack.pop()
            for o in adj[x]:
                if o not in drop and o not in seen:
                    seen.add(o)
                    stack.append(o)
        if len(seen) != len(remaining):
            return False
    return True


def random_triconnected(rng, n, k, extra_parallels=0, p=0.7):
    """Rejection-sample a small triconnected multigraph."""
    import itertools

    while True:
        edges = []
        for u, v in itertools.combinations(range(n), 2):
            if rng.random() < p:
                edges.append((u, v, rng.randrange(1 << k)))
        if len(edges) < 3 * n / 2:
            continue
        g = LabeledMultigraph(n, k, edges)
        if not is_triconnected(g):
            continue
        for _ in range(extra_parallels):
            u, v, _ = edges[rng.randrange(len(edges))]
            edges.append((u, v, rng.randrange(1 << k)))
        return LabeledMultigraph(n, k, edges)


def filtered_copy(g, dead_e):
    """Materialize the subgraph without masked edges (oracle helper)."""
    edges = [
        (u, v, lab)
        for e, (u, v, lab) in enumerate(g.edge_tuples())
        if not dead_e[e]
    ]
    return LabeledMultigraph(g.n, g.k, edges)
