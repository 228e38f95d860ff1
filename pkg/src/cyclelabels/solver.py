"""Top-level solvers: two edges, two vertices, and the two applications.

Non-biconnected inputs are routed through the block-cut tree: every cycle
through the two targets lives in their unique common block, so the SPQR
pipeline always runs on a biconnected block.  The two-vertex problem is
reduced to the two-edge problem by splitting each target vertex in two and
joining the halves by a zero-labeled edge; parallel s-t edges are
subdivided first so that contracting the split back always yields simple
cycles.
"""

from __future__ import annotations

import gc
from contextlib import contextmanager
from dataclasses import dataclass

from .connectivity import block_cut_tree
from .errors import (
    InvalidQuery,
    NoCommonBlock,
    NoPath,
    NotBiconnected,
    TooSmall,
    WitnessValidationFailed,
)
from .graph import LabeledMultigraph, Walk, canonicalize_cycle, walk_label
from .reduction import (
    build_local_instances,
    recombine,
    solve_local,
    summarize_all,
)
from .spqr import build_spqr, root_at_path
from .triconnected import (
    ConstructionTrace,
    Outcome,
    TriconInstance,
    assemble_cycle,
    shared_endpoint_case,
)


@contextmanager
def _quiet_gc():
    """Pause cyclic GC during allocation-heavy solves.

    Full collections rescan the whole live heap, which turns the linear
    pipeline superlinear on large inputs; nothing here creates cycles
    worth collecting mid-solve.
    """
    was_enabled = gc.isenabled()
    if was_enabled:
        gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def _common_block(g, bct, e1, e2):
    b1 = bct.block_of_edge.get(e1)
    b2 = bct.block_of_edge.get(e2)
    if b1 is None or b2 is None or b1 != b2:
        raise NoCommonBlock("no cycle passes through both targets")
    return b1


def _extract_block(g: LabeledMultigraph, edge_ids, spans_all=False):
    if spans_all and len(edge_ids) == g.m:
        # the graph is a single block: reuse it with identity maps
        ident = list(range(max(g.n, g.m)))
        return g, ident, ident, ident
    vmap: dict = {}
    vmap_inv: list = []
    edges = []
    emap = []
    eu, ev, el = g.edge_u, g.edge_v, g.edge_label
    for e in edge_ids:
        u, v = eu[e], ev[e]
        lu = vmap.get(u)
        if lu is None:
            lu = vmap[u] = len(vmap_inv)
            vmap_inv.append(u)
        lv = vmap.get(v)
        if lv is None:
            lv = vmap[v] = len(vmap_inv)
            vmap_inv.append(v)
        edges.append((lu, lv, el[e]))
        emap.append(e)
    sub = LabeledMultigraph(len(vmap_inv), g.k, edges)
    return sub, vmap, vmap_inv, emap


def _translate_walk(walk: Walk, vmap_inv, emap) -> tuple:
    start = vmap_inv[walk.start]
    steps = tuple((emap[e], vmap_inv[head]) for e, head in walk.steps)
    return Walk(start, steps)


def solve_two_edges(g: LabeledMultigraph, e1: int, e2: int) -> Outcome:
    """Unique label or two distinct-label cycles through both edges."""
    if not (0 <= e1 < g.m and 0 <= e2 < g.m) or e1 == e2:
        raise InvalidQuery("edge query needs two distinct valid edge ids")
    with _quiet_gc():
        return _solve_two_edges(g, e1, e2)


def _solve_two_edges(g: LabeledMultigraph, e1: int, e2: int) -> Outcome:
    # optimistic fast path: shared endpoints never need block routing, and
    # for disjoint targets the SPQR construction itself detects a graph
    # that is not one biconnected block
    if set(g.endpoints(e1)) & set(g.endpoints(e2)):
        try:
            return _solve_block_two_edges(g, e1, e2)
        except NoPath as exc:
            raise NoCommonBlock("no cycle passes through both targets") from exc
    try:
        return _solve_block_two_edges(g, e1, e2)
    except (NotBiconnected, TooSmall):
        pass
    bct = block_cut_tree(g, require_connected=False)
    block = _common_block(g, bct, e1, e2)
    sub, vmap, vmap_inv, emap = _extract_block(
        g, bct.blocks[block], spans_all=len(bct.blocks_of_vertex) == g.n
    )
    if sub is g:
        s1, s2 = e1, e2
    else:
        inv_emap = {orig: i for i, orig in enumerate(emap)}
        s1, s2 = inv_emap[e1], inv_emap[e2]
    out = _solve_block_two_edges(sub, s1, s2)
    if sub is g:
        witnesses = out.witnesses
    else:
        witnesses = tuple(
            canonicalize_cycle(g, _translate_walk(w, vmap_inv, emap))
            for w in out.witnesses
        )
    labels = tuple(walk_label(g, w) for w in witnesses)
    if list(labels) != sorted(labels) or len(set(labels)) != len(labels):
        raise WitnessValidationFailed("block translation disturbed the labels")
    for w in witnesses:
        eset = set(w.edge_ids())
        if e1 not in eset or e2 not in eset:
            raise WitnessValidationFailed("witness lost a target edge")
    return Outcome(labels, witnesses, out.traces)


def _solve_block_two_edges(g: LabeledMultigraph, e1: int, e2: int) -> Outcome:
    """Two-edge solve inside one biconnected block."""
    s1 = set(g.endpoints(e1))
    s2 = set(g.endpoints(e2))
    if s1 & s2:
        inst = TriconInstance(g, e1, e2)
        return shared_endpoint_case(inst, ConstructionTrace(), triconnected=False)
    tree = build_spqr(g, check=False)
    view = root_at_path(tree, tree.q_of_edge[e1], tree.q_of_edge[e2])
    summaries = summarize_all(view, g)
    instances = build_local_instances(view, summaries, g)
    outcomes = [solve_local(inst) for inst in instances]
    return recombine(view, instances, outcomes, summaries, g, e1, e2)


def _split_vertex(edges, n, target, k):
    """Split one vertex; every incident edge is duplicated onto both copies.

    Twin copies are appended at the end so existing edge ids stay stable.
    Payload tags ride along unchanged.
    """
    twin = n
    out = []
    extra = []
    for u, v, label, tag in edges:
        if u == target or v == target:
            other = v if u == target else u
            out.append((target, other, label, tag))
            extra.append((twin, other, label, tag))
        else:
            out.append((u, v, label, tag))
    out.extend(extra)
    return out, n + 1, twin


def solve_two_vertices(g: LabeledMultigraph, s: int, t: int) -> Outcome:
    """Unique label or two distinct-label cycles through both vertices."""
    if not (0 <= s < g.n and 0 <= t < g.n) or s == t:
        raise InvalidQuery("vertex query needs two distinct valid vertex ids")
    with _quiet_gc():
        return _solve_two_vertices(g, s, t)


def _solve_two_vertices(g: LabeledMultigraph, s: int, t: int) -> Outcome:
    bct = block_cut_tree(g, require_connected=False)
    common = set(bct.blocks_of_vertex.get(s, ())) & set(
        bct.blocks_of_vertex.get(t, ())
    )
    common = {b for b in common if len(bct.blocks[b]) >= 2}
    if not common:
        raise NoCommonBlock("no cycle passes through both vertices")
    block = min(common)
    sub, vmap, vmap_inv, emap = _extract_block(g, bct.blocks[block])
    ls, lt = vmap[s], vmap[t]

    # subdivide parallel s-t edges so the split below stays faithful
    edges = []
    n = sub.n
    for eid, (u, v, label) in enumerate(sub.edge_tuples()):
        if {u, v} == {ls, lt}:
            mid = n
            n += 1
            edges.append((u, mid, label, ("half_a", eid)))
            edges.append((mid, v, 0, ("half_b", eid)))
        else:
            edges.append((u, v, label, ("orig", eid)))
    edges, n, s2 = _split_vertex(edges, n, ls, sub.k)
    edges.append((ls, s2, 0, ("joint",)))
    e_s = len(edges) - 1
    edges, n, t2 = _split_vertex(edges, n, lt, sub.k)
    edges.append((lt, t2, 0, ("joint",)))
    e_t = len(edges) - 1
    split = LabeledMultigraph(n, sub.k, [(u, v, l) for u, v, l, _ in edges])
    tags = [tag for _, _, _, tag in edges]
    out = _solve_block_two_edges(split, e_s, e_t)

    witnesses = []
    labels = []
    for w in out.witnesses:
        sub_edges = []
        for e in w.edge_ids():
            tag = tags[e]
            if tag[0] in ("orig", "half_a"):
                sub_edges.append(tag[1])
        cyc = assemble_cycle(sub, sub_edges)
        verts = set(cyc.vertices())
        if ls not in verts or lt not in verts:
            raise WitnessValidationFailed("contracted witness misses a target")
        if sub is g:
            full = cyc
        else:
            full = canonicalize_cycle(g, _translate_walk(cyc, vmap_inv, emap))
        witnesses.append(full)
        labels.append(walk_label(g, full))
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    labels = tuple(labels[i] for i in order)
    witnesses = tuple(witnesses[i] for i in order)
    if len(set(labels)) != len(labels):
        raise WitnessValidationFailed("witnesses collapsed onto one label")
    return Outcome(labels, witnesses, out.traces)


@dataclass
class ParityOutcome:
    """Cycles through two vertices, by parity of their length."""

    odd: Walk | None
    even: Walk | None

    @property
    def parities(self) -> tuple:
        out = []
        if self.even is not None:
            out.append(0)
        if self.odd is not None:
            out.append(1)
        return tuple(out)


def _require_simple(g: LabeledMultigraph):
    seen = set()
    for u, v, _ in g.edge_tuples():
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise InvalidQuery("this application expects a simple graph")
        seen.add(key)


def odd_cycle_two_vertices(g: LabeledMultigraph, s: int, t: int) -> ParityOutcome:
    """Find an odd cycle through s and t, or certify the unique parity.

    Labels on the input are ignored: every edge is relabeled 1 over one
    bit, so a cycle's label is exactly its parity.
    """
    _require_simple(g)
    ones = LabeledMultigraph(g.n, 1, [(u, v, 1) for u, v, _ in g.edge_tuples()])
    out = solve_two_vertices(ones, s, t)
    odd = None
    even = None
    for label, wit in zip(out.labels, out.witnesses):
        assert label == len(wit) % 2
        if label == 1:
            odd = wit
        else:
            even = wit
    return ParityOutcome(odd=odd, even=even)


def cycle_three_vertices(g: LabeledMultigraph, x: int, y: int, z: int) -> Walk | None:
    """A cycle through all three vertices of a simple graph, or None.

    Subdivides every edge, splits z into twin copies joined by the single
    odd-making edge, and asks for an odd cycle through x and y.
    """
    _require_simple(g)
    if len({x, y, z}) != 3 or not all(0 <= v < g.n for v in (x, y, z)):
        raise InvalidQuery("three distinct valid vertex ids required")
    edges = []
    n = g.n
    payload = []
    for eid, (u, v, _) in enumerate(g.edge_tuples()):
        mid = n
        n += 1
        edges.append((u, mid))
        payload.append(eid)
        edges.append((mid, v))
        payload.append(eid)
    twin = n
    n += 1
    doubled = []
    dpayload = []
    for (u, v), eid in zip(edges, payload):
        if u == z or v == z:
            other = v if u == z else u
            doubled.append((z, other))
            dpayload.append(eid)
            doubled.append((twin, other))
            dpayload.append(eid)
        else:
            doubled.append((u, v))
            dpayload.append(eid)
    doubled.append((z, twin))
    dpayload.append(None)
    aux = LabeledMultigraph(n, 1, [(u, v, 1) for u, v in doubled])
    try:
        parity = _solve_parity(aux, x, y)
    except NoCommonBlock:
        return None
    if parity.odd is None:
        return None
    mids = [v for v in parity.odd.vertices() if g.n <= v < twin]
    edge_ids = []
    seen = set()
    for v in mids:
        eid = payload[2 * (v - g.n)]
        if eid in seen:
            raise WitnessValidationFailed("midpoint visited twice")
        seen.add(eid)
        edge_ids.append(eid)
    cyc = assemble_cycle(g, edge_ids)
    verts = set(cyc.vertices())
    if not {x, y, z} <= verts:
        raise WitnessValidationFailed("three-vertex witness misses a target")
    return cyc


def _solve_parity(aux: LabeledMultigraph, s: int, t: int) -> ParityOutcome:
    out = solve_two_vertices(aux, s, t)
    odd = even = None
    for label, wit in zip(out.labels, out.witnesses):
        if label == 1:
            odd = wit
        else:
            even = wit
    return ParityOutcome(odd=odd, even=even)
