"""Reduce the biconnected two-edge problem along the SPQR path.

Every subtree hanging off the Q(e1)-Q(e2) tree path collapses into one or
two summary edges between its poles (at most two distinct pole-to-pole
path labels matter, since later use only ever adds a fixed value).  Each
path node then yields an independent local instance, and choosing one
local cycle per node splices back into a global witness cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WitnessValidationFailed
from .graph import LabeledMultigraph, Walk, walk_label
from .labeling import two_labels_st
from .spqr import RootedSpqrView, SpqrTree
from .triconnected import (
    ConstructionTrace,
    Outcome,
    TriconInstance,
    assemble_cycle,
    solve_tricon,
)


@dataclass
class SubtreeSummary:
    """Pole-to-pole label representatives of one off-path subtree.

    ``paths`` are walks over the node's local edge ids; expansion back to
    original edges goes through ``backrefs`` (one entry per local edge).
    """

    poles: tuple
    labels: tuple
    paths: tuple
    backrefs: list


@dataclass
class LocalInstance:
    """One path node's skeleton with summaries substituted.

    ``left`` / ``right`` are local edge ids of the interface edges, whose
    labels are zero; ``positions`` groups local edge ids per skeleton slot
    (series nodes only).
    """

    node: int
    kind: str
    h: LabeledMultigraph
    left: int
    right: int
    backrefs: list
    positions: list


def _collect_local(
    view: RootedSpqrView,
    node: int,
    summaries: dict,
    g: LabeledMultigraph,
    skip_slot,
    interface_slots,
    want_positions: bool,
):
    """Local edges of a node: child summaries in, parent edge out."""
    tree = view.tree
    skel = tree.skeletons[node]
    kinds = tree.kinds
    tree_edges = tree.tree_edges
    q_real = tree.q_real_edge
    edge_label = g.edge_label
    vmap: dict = {}
    nv = 0
    h_u: list = []
    h_v: list = []
    h_l: list = []
    backrefs = []
    positions = [] if want_positions else None
    interface_local = {}
    hu_append = h_u.append
    hv_append = h_v.append
    hl_append = h_l.append
    br_append = backrefs.append
    vget = vmap.get

    for slot, (u, v, kind, ref) in enumerate(skel):
        if slot == skip_slot:
            if want_positions:
                positions.append(())
            continue
        lu = vget(u)
        if lu is None:
            lu = vmap[u] = nv
            nv += 1
        lv = vget(v)
        if lv is None:
            lv = vmap[v] = nv
            nv += 1
        if slot in interface_slots:
            interface_local[slot] = len(h_u)
            if want_positions:
                positions.append((len(h_u),))
            hu_append(lu)
            hv_append(lv)
            hl_append(0)
            br_append(("edge", ref) if kind == "r" else ("interface",))
            continue
        # a virtual edge toward an off-path child
        na, sa, nb, sb = tree_edges[ref]
        child = nb if na == node else na
        if kinds[child] == "Q":
            eid = q_real[child]
            if want_positions:
                positions.append((len(h_u),))
            hu_append(lu)
            hv_append(lv)
            hl_append(edge_label[eid])
            br_append(("edge", eid))
        else:
            summary = summaries[child]
            if want_positions:
                base = len(h_u)
                positions.append(tuple(range(base, base + len(summary.labels))))
            for idx, lab in enumerate(summary.labels):
                hu_append(lu)
                hv_append(lv)
                hl_append(lab)
                br_append(("summary", child, idx))
    return (h_u, h_v, h_l), backrefs, positions, vmap, interface_local


def summarize_subtree(
    view: RootedSpqrView, node: int, summaries: dict, g: LabeledMultigraph
) -> SubtreeSummary:
    """Labels (and realizing pole paths) of one off-path subtree."""
    tree = view.tree
    a, b = view.poles[node]
    if tree.kinds[node] == "Q":
        eid = tree.q_real_edge[node]
        return SubtreeSummary(
            poles=(a, b),
            labels=(g.edge_label[eid],),
            paths=(Walk(0, ((0, 1),)),),
            backrefs=[("edge", eid)],
        )
    skip = view.child_slot(node)
    (h_u, h_v, h_l), backrefs, _, vmap, _ = _collect_local(
        view, node, summaries, g, skip, (), False
    )
    la, lb = vmap[a], vmap[b]
    if len(h_u) == len(vmap) - 1:
        # tree-shaped local graph: the pole path is unique; walk it directly
        adj = [[] for _ in range(len(vmap))]
        for e in range(len(h_u)):
            adj[h_u[e]].append((e, h_v[e]))
            adj[h_v[e]].append((e, h_u[e]))
        prev = {la: None}
        stack = [la]
        while stack:
            x = stack.pop()
            if x == lb:
                break
            for e, o in adj[x]:
                if o not in prev:
                    prev[o] = (x, e)
                    stack.append(o)
        steps = []
        cur = lb
        label = 0
        while prev[cur] is not None:
            px, pe = prev[cur]
            steps.append((pe, cur))
            label ^= h_l[pe]
            cur = px
        steps.reverse()
        return SubtreeSummary(
            poles=(a, b),
            labels=(label,),
            paths=(Walk(la, tuple(steps)),),
            backrefs=backrefs,
        )
    h = LabeledMultigraph.from_arrays(len(vmap), g.k, h_u, h_v, h_l)
    res = two_labels_st(h, la, lb)
    return SubtreeSummary(
        poles=(a, b),
        labels=res.labels,
        paths=res.witnesses,
        backrefs=backrefs,
    )


def summarize_all(view: RootedSpqrView, g: LabeledMultigraph) -> dict:
    """Bottom-up summaries for every off-path node that parents need."""
    summaries: dict = {}
    for node in reversed(view.order):
        summaries[node] = summarize_subtree(view, node, summaries, g)
    return summaries


def build_local_instances(
    view: RootedSpqrView, summaries: dict, g: LabeledMultigraph
) -> list[LocalInstance]:
    """One LocalInstance per path node, interfaces relabeled to zero."""
    out = []
    for i, node in enumerate(view.path):
        kind = view.tree.kinds[node]
        left_slot, right_slot = view.interface[i]
        arrays, backrefs, positions, vmap, iface = _collect_local(
            view, node, summaries, g, None, (left_slot, right_slot), kind == "S"
        )
        h = LabeledMultigraph.from_arrays(len(vmap), g.k, *arrays)
        out.append(
            LocalInstance(
                node=node,
                kind=kind,
                h=h,
                left=iface[left_slot],
                right=iface[right_slot],
                backrefs=backrefs,
                positions=positions,
            )
        )
    return out


def solve_local(inst: LocalInstance):
    """1 or 2 local labels with realizing local cycles through both interfaces."""
    h = inst.h
    if inst.kind in ("Q", "P"):
        u, v = h.endpoints(inst.left)
        cyc = Walk(u, ((inst.left, v), (inst.right, u)))
        return [(0, cyc)], None
    if inst.kind == "S":
        return _solve_series(inst), None
    tri = TriconInstance(h, inst.left, inst.right)
    trace = ConstructionTrace()
    out = solve_tricon(tri, trace)
    return list(zip(out.labels, out.witnesses)), trace


def _solve_series(inst: LocalInstance):
    h = inst.h
    # order the skeleton positions around the series cycle
    incidence: dict = {}
    slot_ends = {}
    for slot, group in enumerate(inst.positions):
        if not group:
            continue
        u, v = h.endpoints(group[0])
        slot_ends[slot] = (u, v)
        incidence.setdefault(u, []).append(slot)
        incidence.setdefault(v, []).append(slot)
    start_slot = min(slot_ends)
    u0, v0 = slot_ends[start_slot]
    ordered = [start_slot]
    cur = v0
    while cur != u0:
        s1, s2 = incidence[cur]
        nxt = s2 if s1 == ordered[-1] else s1
        ordered.append(nxt)
        a, b = slot_ends[nxt]
        cur = b if a == cur else a
    base_steps = []
    base_label = 0
    alt = None
    cur = u0
    for slot in ordered:
        group = inst.positions[slot]
        e = group[0]
        base_label ^= h.edge_label[e]
        cur = h.other_end(e, cur)
        base_steps.append((e, cur))
        if alt is None and len(group) == 2:
            alt = (len(base_steps) - 1, group)
    base = Walk(u0, tuple(base_steps))
    if alt is None:
        return [(base_label, base)]
    pos, group = alt
    e0, e1 = group
    alt_steps = list(base_steps)
    alt_steps[pos] = (e1, base_steps[pos][1])
    alt_label = base_label ^ h.edge_label[e0] ^ h.edge_label[e1]
    alt_walk = Walk(u0, tuple(alt_steps))
    return sorted(((base_label, base), (alt_label, alt_walk)))


def _expand_edges(local_cycle: Walk, backrefs, summaries):
    """Original edge ids realized by a local cycle's edges."""
    out = []
    stack = [backrefs[e] for e, _ in local_cycle.steps]
    while stack:
        tag = stack.pop()
        if tag[0] == "edge":
            out.append(tag[1])
        elif tag[0] == "summary":
            _, node, idx = tag
            s = summaries[node]
            refs = s.backrefs
            for e in s.paths[idx].edge_ids():
                stack.append(refs[e])
        # interface edges contribute nothing
    return out


def recombine(
    view: RootedSpqrView,
    instances: list[LocalInstance],
    outcomes: list,
    summaries: dict,
    g: LabeledMultigraph,
    e1: int,
    e2: int,
) -> Outcome:
    """Splice local cycles into global witnesses through both targets."""
    traces = tuple(t for _, t in outcomes if t is not None)
    locals_ = [o for o, _ in outcomes]
    split = next((i for i, loc in enumerate(locals_) if len(loc) == 2), None)

    def assemble(variant: int) -> Walk:
        edge_ids = []
        for i, loc in enumerate(locals_):
            choice = loc[variant if i == split else 0][1]
            edge_ids.extend(
                _expand_edges(choice, instances[i].backrefs, summaries)
            )
        cyc = assemble_cycle(g, edge_ids)
        eset = set(cyc.edge_ids())
        if e1 not in eset or e2 not in eset:
            raise WitnessValidationFailed("spliced witness misses a target edge")
        return cyc

    first = assemble(0)
    if split is None:
        return Outcome((walk_label(g, first),), (first,), traces)
    second = assemble(1)
    la, lb = walk_label(g, first), walk_label(g, second)
    if la == lb:
        raise WitnessValidationFailed("recombined witnesses carry equal labels")
    pairs = sorted(((la, first), (lb, second)))
    return Outcome(
        (pairs[0][0], pairs[1][0]), (pairs[0][1], pairs[1][1]), traces
    )
