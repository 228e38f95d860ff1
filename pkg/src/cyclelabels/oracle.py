"""Brute-force references used by tests and acceptance runs only.

Everything here is exhaustive and deterministic.  Inputs are guarded to
n <= 12 so suites terminate; nothing from this module belongs on the fast
path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import LabeledMultigraph, Walk, canonicalize_cycle

ORACLE_VERTEX_LIMIT = 12


@dataclass
class LabelSet:
    """Deduplicated labels, each with its first discovered witness walk."""

    witnesses: dict = field(default_factory=dict)  # label -> Walk

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(self.witnesses))

    def add(self, label: int, walk: Walk) -> None:
        if label not in self.witnesses:
            self.witnesses[label] = walk

    def __len__(self):
        return len(self.witnesses)


def _guard(g: LabeledMultigraph) -> None:
    if g.n > ORACLE_VERTEX_LIMIT:
        raise ValueError(
            "oracle refuses graphs with more than {} vertices".format(ORACLE_VERTEX_LIMIT)
        )


def all_simple_cycles(g: LabeledMultigraph):
    """Every simple cycle once, as a canonical Walk (length >= 2)."""
    _guard(g)
    seen = set()
    out = []
    adj = g.adj
    eu, ev = g.edge_u, g.edge_v
    for root in range(g.n):
        # DFS over paths from root using vertices >= root only
        stack = [(root, 0, [], {root})]
        while stack:
            v, idx, edges, used = stack.pop()
            alist = adj[v]
            while idx < len(alist):
                e = alist[idx]
                idx += 1
                o = ev[e] if eu[e] == v else eu[e]
                if o < root or (edges and e == edges[-1]):
                    continue
                if o == root:
                    if len(edges) >= 1 and e != edges[0]:
                        key = frozenset(edges) | {e}
                        if key not in seen:
                            seen.add(key)
                            cyc = Walk(
                                root,
                                tuple(
                                    _walk_steps(g, root, edges + [e])
                                ),
                            )
                            out.append(canonicalize_cycle(g, cyc))
                    continue
                if o in used:
                    continue
                stack.append((v, idx, edges, used))
                stack.append((o, 0, edges + [e], used | {o}))
                break
    return out


def _walk_steps(g, start, edge_ids):
    cur = start
    for e in edge_ids:
        u, v = g.endpoints(e)
        cur = v if cur == u else u
        yield (e, cur)


def enumerate_cycle_labels(
    g: LabeledMultigraph,
    through_vertices=None,
    through_edges=None,
    min_len: int = 2,
) -> LabelSet:
    """Exhaustive label set of simple cycles meeting the constraints."""
    out = LabelSet()
    el = g.edge_label
    for cyc in all_simple_cycles(g):
        if len(cyc) < min_len:
            continue
        if through_vertices is not None:
            verts = set(cyc.vertices())
            if any(v not in verts for v in through_vertices):
                continue
        if through_edges is not None:
            eids = set(cyc.edge_ids())
            if any(e not in eids for e in through_edges):
                continue
        label = 0
        for e, _ in cyc.steps:
            label ^= el[e]
        out.add(label, cyc)
    return out


def enumerate_path_labels(g: LabeledMultigraph, s: int, t: int) -> LabelSet:
    """Exhaustive label set of simple s-t paths."""
    _guard(g)
    out = LabelSet()
    el = g.edge_label
    adj = g.adj
    eu, ev = g.edge_u, g.edge_v
    stack = [(s, 0, [], {s}, 0)]
    while stack:
        v, idx, steps, used, label = stack.pop()
        if v == t:
            out.add(label, Walk(s, tuple(steps)))
            continue
        alist = adj[v]
        while idx < len(alist):
            e = alist[idx]
            idx += 1
            o = ev[e] if eu[e] == v else eu[e]
            if o in used:
                continue
            stack.append((v, idx, steps, used, label))
            stack.append((o, 0, steps + [(e, o)], used | {o}, label ^ el[e]))
            break
    return out


# --------------------------------------------------------------------------
# Reference SPQR construction straight from the recursive definition.
# Deliberately shares no code with the linear-time builder: components are
# found by trying candidate split pairs and recursing, then normalized the
# same way (merge adjacent bonds / polygons, wrap real edges in Q-nodes).
# Quadratic and only for differential testing.
# --------------------------------------------------------------------------


def _separation_classes(vertices, edges, a, b):
    """Partition edges into separation classes w.r.t. the pair {a, b}."""
    comp = {v: None for v in vertices if v not in (a, b)}
    adj = {}
    for idx, (u, v, _) in enumerate(edges):
        adj.setdefault(u, []).append((idx, v))
        adj.setdefault(v, []).append((idx, u))
    classes = []
    assigned = [None] * len(edges)
    for v in comp:
        if comp[v] is not None:
            continue
        cid = len(classes)
        classes.append([])
        stack = [v]
        comp[v] = cid
        while stack:
            x = stack.pop()
            for idx, o in adj.get(x, ()):  # noqa: B023
                if assigned[idx] is None:
                    assigned[idx] = cid
                    classes[cid].append(idx)
                if o in (a, b) or comp.get(o) is not None:
                    continue
                comp[o] = cid
                stack.append(o)
    for idx, (u, v, _) in enumerate(edges):
        if assigned[idx] is None:  # a-b edges form singleton classes
            assigned[idx] = len(classes)
            classes.append([idx])
    return classes


def _reference_split(edges, vertices, next_virtual):
    """Recursively split a biconnected multigraph into components.

    ``edges`` holds (u, v, tag) triples; tag is ('r', edge id) or
    ('v', pair key).  Returns a list of components (lists of triples).
    """
    vset = sorted(vertices)
    n = len(vset)
    if n == 2:
        return [list(edges)]
    deg = {v: 0 for v in vset}
    for u, v, _ in edges:
        deg[u] += 1
        deg[v] += 1
    if all(d == 2 for d in deg.values()) and len(edges) == n:
        return [list(edges)]  # polygon
    for ai in range(n):
        for bi in range(ai + 1, n):
            a, b = vset[ai], vset[bi]
            classes = _separation_classes(vset, edges, a, b)
            if len(classes) < 2:
                continue
            sizes = sorted(len(c) for c in classes)
            if len(classes) == 2 and sizes[0] == 1:
                continue  # trivial pair
            if len(classes) == 3 and sizes == [1, 1, 1]:
                continue  # triple bond, handled as terminal elsewhere
            # choose a side with >= 2 edges whose complement also has >= 2
            total = len(edges)
            side = None
            for c in classes:
                if len(c) >= 2 and total - len(c) >= 2:
                    side = list(c)
                    break
            if side is None:
                singles = [c[0] for c in classes if len(c) == 1]
                if len(singles) >= 2 and total - 2 >= 2:
                    side = singles[:2]
                elif len(singles) >= 2 and total == len(singles):
                    side = singles[: total - 2] if total - 2 >= 2 else None
            if side is None:
                continue
            key = next_virtual[0]
            next_virtual[0] += 1
            side_set = set(side)
            e1 = [edges[i] for i in side] + [(a, b, ("v", key))]
            e2 = [edges[i] for i in range(total) if i not in side_set]
            e2.append((a, b, ("v", key)))
            v1 = {a, b}
            for u, v, _ in e1:
                v1.add(u)
                v1.add(v)
            v2 = {a, b}
            for u, v, _ in e2:
                v2.add(u)
                v2.add(v)
            return _reference_split(e1, v1, next_virtual) + _reference_split(
                e2, v2, next_virtual
            )
    return [list(edges)]  # triconnected


def reference_spqr(g: LabeledMultigraph):
    """SPQR tree computed from the recursive definition (quadratic)."""
    from .errors import NotBiconnected, TooSmall
    from .spqr import SpqrTree

    if g.m < 3:
        raise TooSmall("SPQR tree needs at least 3 edges")
    edges = [(u, v, ("r", e)) for e, (u, v, _) in enumerate(g.edge_tuples())]
    vertices = set(range(g.n))
    if g.n > 2:
        # quick biconnectivity screen: connected and no articulation vertex
        for drop in range(g.n):
            seen = set()
            start = 0 if drop != 0 else 1
            stack = [start]
            seen.add(start)
            while stack:
                x = stack.pop()
                for e in g.adj[x]:
                    o = g.other_end(e, x)
                    if o != drop and o not in seen:
                        seen.add(o)
                        stack.append(o)
            if len(seen) != g.n - 1:
                raise NotBiconnected("graph is not biconnected")
    comps = _reference_split(edges, vertices, [0])

    def classify(comp):
        verts = set()
        for u, v, _ in comp:
            verts.add(u)
            verts.add(v)
        if len(verts) == 2:
            return "P"
        if len(comp) == len(verts):
            return "S"
        return "R"

    kinds = [classify(c) for c in comps]
    owner = {}
    for ci, comp in enumerate(comps):
        for u, v, tag in comp:
            if tag[0] == "v":
                owner.setdefault(tag[1], []).append(ci)
    cluster = list(range(len(comps)))

    def find(x):
        while cluster[x] != x:
            cluster[x] = cluster[cluster[x]]
            x = cluster[x]
        return x

    for key, pair in owner.items():
        if len(pair) != 2:
            raise AssertionError("unpaired virtual edge in reference splitter")
        a, b = find(pair[0]), find(pair[1])
        if a != b and kinds[pair[0]] == kinds[pair[1]] != "R":
            # only merge when the *cluster* kinds still agree
            cluster[b] = a
    # recompute which virtuals became internal
    internal = {key for key, (x, y) in owner.items() if find(x) == find(y)}
    merged = {}
    merged_kind = {}
    for ci, comp in enumerate(comps):
        root = find(ci)
        merged.setdefault(root, []).extend(
            entry for entry in comp if not (entry[2][0] == "v" and entry[2][1] in internal)
        )
        merged_kind[root] = kinds[root]
    node_ids = sorted(merged)
    node_index = {r: i for i, r in enumerate(node_ids)}
    kinds_out = [merged_kind[r] for r in node_ids]
    skeletons = [[] for _ in node_ids]
    tree_edges = []
    q_of_edge = [-1] * g.m
    virt_slots = {}
    real_slots = {}
    for r in node_ids:
        ni = node_index[r]
        for u, v, tag in merged[r]:
            slot = len(skeletons[ni])
            if tag[0] == "r":
                skeletons[ni].append([u, v, "r", tag[1]])
                real_slots[tag[1]] = (ni, slot)
            else:
                skeletons[ni].append([u, v, "v", -1])
                virt_slots.setdefault(tag[1], []).append((ni, slot))
    for key, slots in virt_slots.items():
        (na, sa), (nb, sb) = slots
        t = len(tree_edges)
        tree_edges.append((na, sa, nb, sb))
        skeletons[na][sa][3] = t
        skeletons[nb][sb][3] = t
    for eid in range(g.m):
        ni, slot = real_slots[eid]
        u, v, _, _ = skeletons[ni][slot]
        q = len(kinds_out)
        kinds_out.append("Q")
        t = len(tree_edges)
        skeletons.append([[u, v, "r", eid], [u, v, "v", t]])
        tree_edges.append((ni, slot, q, 1))
        skeletons[ni][slot][2] = "v"
        skeletons[ni][slot][3] = t
        q_of_edge[eid] = q
    skeletons = [[tuple(x) for x in skel] for skel in skeletons]
    return SpqrTree(g.n, g.m, kinds_out, skeletons, tree_edges, q_of_edge)


def spqr_certificate(tree) -> tuple:
    """Isomorphism-invariant certificate of an SPQR tree.

    Node payloads (kind plus skeleton edge multiset over real vertex ids)
    are combined by AHU hashing from the leaves, rooted at the tree center
    (minimum over both centers when there are two).
    """
    nodes = range(tree.node_count)
    payload = []
    for i in nodes:
        skel = []
        for u, v, kind, ref in tree.skeletons[i]:
            a, b = (u, v) if u <= v else (v, u)
            skel.append((a, b, kind, ref if kind == "r" else -1))
        payload.append((tree.kinds[i], tuple(sorted(skel))))
    adj = [[nb for _, nb in tree.adjacency[i]] for i in nodes]
    if tree.node_count == 1:
        return (payload[0],)
    # find tree center(s) by repeated leaf stripping
    deg = [len(a) for a in adj]
    layer = [i for i in nodes if deg[i] <= 1]
    remaining = tree.node_count
    alive = [True] * tree.node_count
    while remaining > 2:
        nxt = []
        for leaf in layer:
            alive[leaf] = False
            remaining -= 1
            for nb in adj[leaf]:
                if alive[nb]:
                    deg[nb] -= 1
                    if deg[nb] == 1:
                        nxt.append(nb)
        layer = nxt
    centers = [i for i in nodes if alive[i]]

    def rooted(center):
        # iterative AHU from the leaves up
        order = [center]
        parent = {center: None}
        qi = 0
        while qi < len(order):
            x = order[qi]
            qi += 1
            for nb in adj[x]:
                if nb not in parent:
                    parent[nb] = x
                    order.append(nb)
        cert = {}
        for x in reversed(order):
            kids = sorted(cert[c] for c in adj[x] if parent.get(c) == x)
            cert[x] = (payload[x], tuple(kids))
        return cert[center]

    return min(tuple([rooted(c)]) for c in centers)
