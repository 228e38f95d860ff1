"""Shifting equivalence and the elementary labeled-graph subproblems.

Shifting at a vertex XORs a fixed value onto all its incident edges; it
never changes the label of a cycle.  Normalizing on a spanning tree (all
tree edges forced to zero) reduces balance tests and two-label path search
to scanning non-tree edge labels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .connectivity import block_cut_tree, block_path, disjoint_paths
from .errors import Disconnected, NoPath, NotSpanningTree, SameVertex
from .graph import LabeledMultigraph, Walk, canonicalize_cycle, walk_from_edges


@dataclass(frozen=True)
class ShiftAssignment:
    """Per-vertex shift values; applying them re-gauges the labeling."""

    shifts: tuple[int, ...]

    def apply(self, g: LabeledMultigraph) -> LabeledMultigraph:
        sh = self.shifts
        edges = [
            (u, v, label ^ sh[u] ^ sh[v])
            for u, v, label in g.edge_tuples()
        ]
        return LabeledMultigraph(g.n, g.k, edges)


@dataclass(frozen=True)
class TwoLabelsResult:
    """min(|L|, 2) distinct s-t path labels with one witness path each."""

    labels: tuple[int, ...]
    witnesses: tuple[Walk, ...]


def _spanning_forest(g: LabeledMultigraph, dead_v=None, dead_e=None):
    """Iterative DFS forest rooted at the smallest alive vertex ids.

    Returns (parent_vertex, parent_edge, shift, order) where shift[v] is
    the XOR of original labels along the root-v tree path, i.e. the shift
    assignment that zeroes all tree edges.
    """
    n = g.n
    parent_v = [-1] * n
    parent_e = [-1] * n
    shift = [0] * n
    seen = bytearray(n)
    order = []
    order_append = order.append
    adj = g.adj
    eu, ev, el = g.edge_u, g.edge_v, g.edge_label
    masked_e = dead_e is not None
    masked_v = dead_v is not None
    for root in range(n):
        if seen[root] or (masked_v and dead_v[root]):
            continue
        seen[root] = 1
        order_append(root)
        stack = [(root, 0)]
        stack_pop = stack.pop
        stack_append = stack.append
        while stack:
            v, idx = stack_pop()
            alist = adj[v]
            la = len(alist)
            sv = shift[v]
            while idx < la:
                e = alist[idx]
                idx += 1
                if masked_e and dead_e[e]:
                    continue
                u = eu[e]
                o = ev[e] if u == v else u
                if seen[o] or (masked_v and dead_v[o]):
                    continue
                seen[o] = 1
                parent_v[o] = v
                parent_e[o] = e
                shift[o] = sv ^ el[e]
                order_append(o)
                stack_append((v, idx))
                stack_append((o, 0))
                break
    return parent_v, parent_e, shift, order


def _tree_path(parent_v, parent_e, u, v):
    """Edge ids of the forest path u..v (u and v must share a tree)."""
    ancestors = {u}
    x = u
    while parent_v[x] != -1:
        x = parent_v[x]
        ancestors.add(x)
    up = []
    x = v
    while x not in ancestors:
        up.append(parent_e[x])
        x = parent_v[x]
    down = []
    y = u
    while y != x:
        down.append(parent_e[y])
        y = parent_v[y]
    up.reverse()
    return down + up


def normalize_on_tree(g: LabeledMultigraph, tree) -> tuple[LabeledMultigraph, ShiftAssignment]:
    """Equivalent labeling with every tree edge zeroed, plus the shifts.

    ``tree`` is a set of edge ids forming a spanning tree of the connected
    graph g.  Computed top-down from vertex 0 in O(n + m).
    """
    tset = set(tree)
    if len(tset) != max(g.n - 1, 0):
        raise NotSpanningTree("expected {} tree edges, got {}".format(g.n - 1, len(tset)))
    tree_mask = bytearray(g.m)
    for e in tset:
        tree_mask[e] = 1
    dead_e = bytearray(1 if not tree_mask[e] else 0 for e in range(g.m))
    parent_v, parent_e, shift, order = _spanning_forest(g, dead_e=dead_e)
    if len(order) != g.n:
        # distinguish a disconnected graph from a non-spanning edge set
        _, _, _, full_order = _spanning_forest(g)
        if len(full_order) != g.n:
            raise Disconnected("graph is not connected")
        raise NotSpanningTree("edge set does not span the graph")
    assignment = ShiftAssignment(tuple(shift))
    return assignment.apply(g), assignment


def is_balanced(g: LabeledMultigraph):
    """True when no cycle has a non-zero label, else a witness cycle.

    The witness is the canonicalized fundamental cycle of the first
    offending non-tree edge (a 2-cycle when the edge is parallel to a
    tree edge).
    """
    parent_v, parent_e, shift, _ = _spanning_forest(g)
    el = g.edge_label
    for e in range(g.m):
        if e == parent_e[g.edge_u[e]] or e == parent_e[g.edge_v[e]]:
            continue
        u, v = g.edge_u[e], g.edge_v[e]
        if el[e] ^ shift[u] ^ shift[v]:
            path = _tree_path(parent_v, parent_e, u, v)
            cycle = walk_from_edges(g, u, path + [e])
            return canonicalize_cycle(g, cycle)
    return True


def find_nonzero_cycle_len3(g: LabeledMultigraph, dead_v=None, dead_e=None) -> Walk | None:
    """A canonical non-zero cycle of length >= 3, or None.

    Per block: normalize on a spanning tree; an offending non-tree edge
    whose fundamental cycle is longer than two settles it immediately.  A
    non-zero parallel pair inside a block with a third vertex is extended
    through a 2-fan from that vertex; a parallel pair that forms its own
    block cannot be extended and is skipped.
    """
    # fast path: any offending non-tree edge that is not parallel to a tree
    # edge yields a long fundamental cycle without a block decomposition
    parent_v, parent_e, shift, _ = _spanning_forest(g, dead_v=dead_v, dead_e=dead_e)
    el0 = g.edge_label
    eu0, ev0 = g.edge_u, g.edge_v
    saw_parallel_offender = False
    for e in range(g.m):
        if dead_e is not None and dead_e[e]:
            continue
        u, v = eu0[e], ev0[e]
        if e == parent_e[u] or e == parent_e[v]:
            continue
        if dead_v is not None and (dead_v[u] or dead_v[v]):
            continue
        if not el0[e] ^ shift[u] ^ shift[v]:
            continue
        if parent_v[u] == v or parent_v[v] == u:
            saw_parallel_offender = True
            continue
        path = _tree_path(parent_v, parent_e, u, v)
        cycle = walk_from_edges(g, u, path + [e])
        return canonicalize_cycle(g, cycle)
    if not saw_parallel_offender:
        return None
    bct = block_cut_tree(g, dead_v=dead_v, dead_e=dead_e, require_connected=False)
    eu, ev, el = g.edge_u, g.edge_v, g.edge_label
    for b, block in enumerate(bct.blocks):
        verts = bct.block_vertices(b, g)
        in_block = bytearray(g.m)
        for e in block:
            in_block[e] = 1
        dead_local = bytearray(
            0 if in_block[e] and not (dead_e is not None and dead_e[e]) else 1
            for e in range(g.m)
        )
        parent_v, parent_e, shift, _ = _spanning_forest(g, dead_v=dead_v, dead_e=dead_local)
        parallel_offender = -1
        for e in block:
            u, v = eu[e], ev[e]
            if e == parent_e[u] or e == parent_e[v]:
                continue
            if not el[e] ^ shift[u] ^ shift[v]:
                continue
            if parent_v[u] == v or parent_v[v] == u:
                if parallel_offender == -1:
                    parallel_offender = e
                continue
            path = _tree_path(parent_v, parent_e, u, v)
            cycle = walk_from_edges(g, u, path + [e])
            return canonicalize_cycle(g, cycle)
        if parallel_offender == -1 or len(verts) < 3:
            continue
        e = parallel_offender
        u, v = eu[e], ev[e]
        tree_e = parent_e[u] if parent_v[u] == v else parent_e[v]
        s = min(verts - {u, v})
        fan = disjoint_paths(
            g, None, (u, v), 2, fan_source=s, dead_v=dead_v, dead_e=dead_local
        )
        fu, fv = fan.paths
        if fu.end != u:
            fu, fv = fv, fu
        lab = 0
        for x in fu.edge_ids():
            lab ^= el[x]
        for x in fv.edge_ids():
            lab ^= el[x]
        middle = e if lab ^ el[e] else tree_e
        cycle = fu.concat(walk_from_edges(g, u, [middle])).concat(fv.reversed())
        return canonicalize_cycle(g, cycle)
    return None


def _block_two_labels(g, block_edges, a, b, dead_v, dead_e):
    """Within one block: (labels, witness walks) for a-b paths, truncated.

    Labels are in the original gauge.  Exploits that a 2-connected block
    has two a-b path labels exactly when it is unbalanced; the second
    witness routes both terminals disjointly onto a non-zero cycle and
    takes its two arcs.
    """
    el = g.edge_label
    in_block = bytearray(g.m)
    for e in block_edges:
        in_block[e] = 1
    dead_local = bytearray(
        0 if in_block[e] and not (dead_e is not None and dead_e[e]) else 1
        for e in range(g.m)
    )
    parent_v, parent_e, shift, _ = _spanning_forest(g, dead_v=dead_v, dead_e=dead_local)
    base_label = shift[a] ^ shift[b]
    base_path = walk_from_edges(g, a, _tree_path(parent_v, parent_e, a, b))
    offender = -1
    for e in block_edges:
        u, v = g.edge_u[e], g.edge_v[e]
        if e == parent_e[u] or e == parent_e[v]:
            continue
        if el[e] ^ shift[u] ^ shift[v]:
            offender = e
            break
    if offender == -1:
        return [base_label], [base_path]
    u, v = g.edge_u[offender], g.edge_v[offender]
    cyc_edges = _tree_path(parent_v, parent_e, u, v) + [offender]
    cycle = walk_from_edges(g, u, cyc_edges)
    cyc_vertices = cycle.vertices()[:-1]
    fan = disjoint_paths(
        g, (a, b), cyc_vertices, 2, dead_v=dead_v, dead_e=dead_local
    )
    qa, qb = fan.paths
    if qa.start != a:
        qa, qb = qb, qa
    p, q = qa.end, qb.end
    # split the cycle at p and q into its two arcs
    pi = cyc_vertices.index(p)
    rotated = Walk(p, cycle.steps[pi:] + cycle.steps[:pi])
    arc1_steps = []
    rest = 0
    for i, (e, head) in enumerate(rotated.steps):
        arc1_steps.append((e, head))
        if head == q:
            rest = i + 1
            break
    arc1 = Walk(p, tuple(arc1_steps))
    arc2 = Walk(q, tuple(rotated.steps[rest:])).reversed()
    cand = []
    for arc in (arc1, arc2):
        walk = qa.concat(arc).concat(qb.reversed())
        lab = 0
        for x in walk.edge_ids():
            lab ^= el[x]
        cand.append((lab, walk))
    second = next((lw for lw in cand if lw[0] != base_label), None)
    if second is None:  # the two arcs differ by the cycle label, so one must
        raise AssertionError("arc construction failed to produce a second label")
    return [base_label, second[0]], [base_path, second[1]]


def two_labels_st(
    g: LabeledMultigraph, s: int, t: int, dead_v=None, dead_e=None,
    assume_biconnected: bool = False,
) -> TwoLabelsResult:
    """min(|L|, 2) labels of s-t paths with witnesses, in O(n + m).

    Restricts to the blocks on the s-t block-cut-tree path; every block
    contributes its tree-path label, and the first unbalanced block on the
    path (if any) contributes the second label.  Callers that already know
    the alive part is biconnected can skip the decomposition.
    """
    if s == t:
        raise SameVertex("s and t must differ")
    if assume_biconnected:
        alive = [
            e
            for e in range(g.m)
            if not (dead_e is not None and dead_e[e])
            and not (
                dead_v is not None
                and (dead_v[g.edge_u[e]] or dead_v[g.edge_v[e]])
            )
        ]
        labels, witnesses = _block_two_labels(g, alive, s, t, dead_v, dead_e)
        order = sorted(range(len(labels)), key=labels.__getitem__)
        return TwoLabelsResult(
            tuple(labels[i] for i in order), tuple(witnesses[i] for i in order)
        )
    bct = block_cut_tree(g, dead_v=dead_v, dead_e=dead_e, require_connected=False)
    chain = block_path(bct, g, s, t)
    if chain is None:
        raise NoPath("no path between {} and {}".format(s, t))
    base_parts = []
    base_label = 0
    alt = None  # (index, labels, witnesses)
    for i, (blk, enter, exit_) in enumerate(chain):
        labels, witnesses = _block_two_labels(
            g, bct.blocks[blk], enter, exit_, dead_v, dead_e
        )
        base_parts.append(witnesses[0])
        base_label ^= labels[0]
        if alt is None and len(labels) == 2:
            alt = (i, labels, witnesses)
    first = base_parts[0]
    for part in base_parts[1:]:
        first = first.concat(part)
    if alt is None:
        return TwoLabelsResult((base_label,), (first,))
    i, labels, witnesses = alt
    second_label = base_label ^ labels[0] ^ labels[1]
    parts = base_parts[:i] + [witnesses[1]] + base_parts[i + 1 :]
    second = parts[0]
    for part in parts[1:]:
        second = second.concat(part)
    results = sorted(((base_label, first), (second_label, second)))
    return TwoLabelsResult(
        (results[0][0], results[1][0]), (results[0][1], results[1][1])
    )
