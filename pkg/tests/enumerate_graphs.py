"""Exhaustive enumeration of small biconnected simple graphs up to isomorphism.

Grows every 2-connected graph from a cycle by open ear additions (ears with
fresh inner vertices, or chord edges), deduplicating by a canonical form.
Known counts: 1, 3, 10, 56, 468 for n = 3..7.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def _canonical(n, edges):
    """Lexicographically smallest edge tuple over degree-respecting perms."""
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    classes: dict = {}
    for v in range(n):
        classes.setdefault(deg[v], []).append(v)
    keys = sorted(classes)
    blocks = [classes[k] for k in keys]
    # canonical ids: members of lower-degree classes come first
    bases = []
    acc = 0
    for b in blocks:
        bases.append(acc)
        acc += len(b)
    best = None
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [0] * n
        for base, images in zip(bases, parts):
            for offset, src in enumerate(images):
                perm[src] = base + offset
        key = tuple(
            sorted(
                (perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])
                for u, v in edges
            )
        )
        if best is None or key < best:
            best = key
    return best


def biconnected_simple_graphs(max_n):
    """All biconnected simple graphs with 3 <= n <= max_n, up to isomorphism.

    Returns a dict n -> list of canonical edge tuples (vertices 0..n-1).
    """
    seen = set()
    frontier = []
    for cyc in range(3, max_n + 1):
        edges = tuple((i, (i + 1) % cyc) for i in range(cyc))
        canon = _canonical(cyc, edges)
        if (cyc, canon) not in seen:
            seen.add((cyc, canon))
            frontier.append((cyc, canon))
    out: dict = {n: [] for n in range(3, max_n + 1)}
    qi = 0
    while qi < len(frontier):
        n, edges = frontier[qi]
        qi += 1
        out[n].append(edges)
        edge_set = set(edges)
        # chord additions
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) in edge_set:
                    continue
                cand = tuple(sorted(edge_set | {(u, v)}))
                canon = _canonical(n, cand)
                if (n, canon) not in seen:
                    seen.add((n, canon))
                    frontier.append((n, canon))
        # ear additions with j >= 1 fresh inner vertices
        for j in range(1, max_n - n + 1):
            n2 = n + j
            inner = list(range(n, n2))
            for u in range(n):
                for v in range(u, n):
                    if u == v and j < 2:
                        continue  # need two distinct attachment points
                    if u == v:
                        continue  # ears join distinct vertices
                    chain = [u] + inner + [v]
                    new_edges = set(edges)
                    for a, b in zip(chain, chain[1:]):
                        new_edges.add((a, b) if a < b else (b, a))
                    cand = tuple(sorted(new_edges))
                    canon = _canonical(n2, cand)
                    if (n2, canon) not in seen:
                        seen.add((n2, canon))
                        frontier.append((n2, canon))
    return out


@lru_cache(maxsize=None)
def biconnected_catalog(max_n):
    counts = {3: 1, 4: 3, 5: 10, 6: 56, 7: 468}
    catalog = biconnected_simple_graphs(max_n)
    for n in range(3, max_n + 1):
        assert len(catalog[n]) == counts[n], (
            "enumerator found {} biconnected graphs on {} vertices, expected {}".format(
                len(catalog[n]), n, counts[n]
            )
        )
    return catalog
