"""Two labels of cycles through two edges in triconnected multigraphs.

Decision rule: with both target edges (and all their parallels) removed,
two cycle labels exist through the targets iff the remainder contains a
non-zero cycle of length at least three.  The yes-direction is fully
constructive: a six-case kernel turns such a cycle into two path pairs
with distinct labels, a crossing transformation repairs non-crossing
pairs, and appending the target edges closes the final witnesses.

Every intermediate object is validated; a failed validation raises and
means an internal bug, never a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .connectivity import bfs_path, disjoint_paths
from .errors import CaseExhaustion, NotEnoughPaths, WitnessValidationFailed
from .graph import (
    LabeledMultigraph,
    Walk,
    canonicalize_cycle,
    walk_from_edges,
)
from .labeling import find_nonzero_cycle_len3, two_labels_st


@dataclass
class ConstructionTrace:
    """Named intermediate walks and XOR identities recorded during a solve."""

    walks: dict = field(default_factory=dict)
    identities: list = field(default_factory=list)  # (name, lhs, rhs)
    transitions: int = 0
    cases: list = field(default_factory=list)

    def record(self, name: str, walk: Walk) -> None:
        self.walks[name] = walk

    def identity(self, name: str, lhs: int, rhs: int) -> None:
        self.identities.append((name, lhs, rhs))


@dataclass
class Outcome:
    """Unique{label, witness} or TwoLabels{two witnesses, distinct labels}."""

    labels: tuple
    witnesses: tuple
    traces: tuple = ()

    @property
    def kind(self) -> str:
        return "unique" if len(self.labels) == 1 else "two"


class TriconInstance:
    """A triconnected multigraph with two distinct target edges.

    ``dead_gp`` masks every parallel copy of either target, yielding the
    reduced graph used by the decision rule.
    """

    __slots__ = ("g", "e1", "e2", "dead_gp")

    def __init__(self, g: LabeledMultigraph, e1: int, e2: int):
        if e1 == e2:
            raise ValueError("target edges must differ")
        self.g = g
        self.e1 = e1
        self.e2 = e2
        eu, ev = g.edge_u, g.edge_v
        a1, b1 = eu[e1], ev[e1]
        if a1 > b1:
            a1, b1 = b1, a1
        a2, b2 = eu[e2], ev[e2]
        if a2 > b2:
            a2, b2 = b2, a2
        if g.m >= 65536:
            import numpy as np

            au = np.asarray(eu, dtype=np.int64)
            av = np.asarray(ev, dtype=np.int64)
            lo = np.minimum(au, av)
            hi = np.maximum(au, av)
            mask = ((lo == a1) & (hi == b1)) | ((lo == a2) & (hi == b2))
            self.dead_gp = bytearray(mask.astype(np.uint8).tobytes())
        else:
            dead = bytearray(g.m)
            for e in range(g.m):
                u, v = eu[e], ev[e]
                if u > v:
                    u, v = v, u
                if (u == a1 and v == b1) or (u == a2 and v == b2):
                    dead[e] = 1
            self.dead_gp = dead


def _wlabel(g, walk):
    label = 0
    el = g.edge_label
    for e, _ in walk.steps:
        label ^= el[e]
    return label


def _sub_walk(walk: Walk, a: int, b: int) -> Walk:
    """Subpath of a simple path between two of its vertices (oriented a->b)."""
    vs = walk.vertices()
    ia, ib = vs.index(a), vs.index(b)
    if ia <= ib:
        return Walk(a, walk.steps[ia:ib])
    return Walk(b, walk.steps[ib:ia]).reversed()


def _rotate_cycle(c: Walk, v: int) -> Walk:
    vs = c.vertices()[:-1]
    i = vs.index(v)
    return Walk(v, c.steps[i:] + c.steps[:i])


def _arcs_between(c: Walk, p: int, q: int) -> tuple[Walk, Walk]:
    """The two p->q arcs of a cycle, in rotation order."""
    rot = _rotate_cycle(c, p)
    vs = rot.vertices()
    j = vs.index(q)
    arc1 = Walk(p, rot.steps[:j])
    arc2 = Walk(q, rot.steps[j:]).reversed()
    return arc1, arc2


def _cycle_arc_avoiding(c: Walk, p: int, q: int, avoid: int) -> Walk:
    a1, a2 = _arcs_between(c, p, q)
    if avoid in a1.vertices()[1:-1]:
        return a2
    return a1


def _check_pair(g, p1: Walk, p2: Walk, where: str):
    if not (p1.is_path() and p2.is_path()):
        raise WitnessValidationFailed("{}: pair member not a path".format(where))
    if set(p1.vertices()) & set(p2.vertices()):
        raise WitnessValidationFailed("{}: pair members intersect".format(where))


def assemble_cycle(g: LabeledMultigraph, edge_ids) -> Walk:
    """Order an edge set with all vertex degrees two into a canonical cycle."""
    eids = list(edge_ids)
    if len(set(eids)) != len(eids):
        raise WitnessValidationFailed("edge repeated in cycle assembly")
    inc = {}
    for e in eids:
        u, v = g.endpoints(e)
        inc.setdefault(u, []).append((e, v))
        inc.setdefault(v, []).append((e, u))
    for v, lst in inc.items():
        if len(lst) != 2:
            raise WitnessValidationFailed(
                "vertex {} has degree {} in cycle assembly".format(v, len(lst))
            )
    start = min(inc)
    first, second = sorted(inc[start])
    steps = [first]
    cur = first[1]
    prev_edge = first[0]
    while cur != start:
        options = [t for t in inc[cur] if t[0] != prev_edge]
        if len(options) != 1:
            raise WitnessValidationFailed("cycle assembly lost its way")
        steps.append(options[0])
        prev_edge, cur = options[0]
    walk = Walk(start, tuple(steps))
    if len(walk.steps) != len(eids) or not walk.is_cycle():
        raise WitnessValidationFailed("assembled walk is not a simple cycle")
    return canonicalize_cycle(g, walk)


def _close_pair(inst: TriconInstance, p1: Walk, p2: Walk) -> Walk:
    edges = p1.edge_ids() + p2.edge_ids() + [inst.e1, inst.e2]
    cyc = assemble_cycle(inst.g, edges)
    for e in (inst.e1, inst.e2):
        if e not in set(cyc.edge_ids()):
            raise WitnessValidationFailed("closed cycle misses a target edge")
    return cyc


# -------------------------------------------------------------------------
# helper lemmas
# -------------------------------------------------------------------------


def chord_pairs(inst: TriconInstance, c: Walk, q: Walk, trace: ConstructionTrace):
    """Two distinct-label path pairs from a cycle chord through both targets.

    ``q`` runs C-to-C, passes one edge of either target's parallel class,
    and has all inner vertices off the cycle.
    """
    g = inst.g
    s1 = frozenset(g.endpoints(inst.e1))
    s2 = frozenset(g.endpoints(inst.e2))
    hits = [
        i
        for i, (e, _) in enumerate(q.steps)
        if frozenset(g.endpoints(e)) in (s1, s2)
    ]
    if len(hits) != 2:
        raise WitnessValidationFailed("chord walk must cross both targets once")
    ia, ib = hits
    vs = q.vertices()
    z1, z2 = q.start, q.end
    seg0 = Walk(z1, q.steps[:ia])               # z1 .. a
    mid = Walk(vs[ia + 1], q.steps[ia + 1 : ib])  # b .. c
    seg2 = Walk(vs[ib + 1], q.steps[ib + 1 :])  # d .. z2
    arc1, arc2 = _arcs_between(c, z2, z1)
    pairs = []
    for arc in (arc1, arc2):
        side = seg2.concat(arc).concat(seg0)    # d .. z2 .. z1 .. a
        _check_pair(g, mid, side, "chord")
        pairs.append((mid, side))
    l1 = _wlabel(g, pairs[0][0]) ^ _wlabel(g, pairs[0][1])
    l2 = _wlabel(g, pairs[1][0]) ^ _wlabel(g, pairs[1][1])
    trace.record("chord.Q", q)
    trace.identity("chord", l1 ^ l2, _wlabel(g, c))
    if l1 == l2:
        raise WitnessValidationFailed("chord pairs collapsed to one label")
    return pairs[0], pairs[1]


def four_disjoint_pairs(inst: TriconInstance, c: Walk, attachments: dict, trace):
    """Two distinct-label pairs from four disjoint attachment paths to C.

    ``attachments`` maps each of the four target vertices to a (possibly
    trivial) walk from it toward the cycle; walks are shortened here so
    each meets C exactly once, at its end.
    """
    g = inst.g
    cset = set(c.vertices())
    short = {}
    for z, walk in attachments.items():
        vs = walk.vertices()
        stop = next(i for i, v in enumerate(vs) if v in cset)
        short[z] = Walk(walk.start, walk.steps[:stop])
    points = {z: w.end for z, w in short.items()}
    if len(set(points.values())) != 4:
        raise WitnessValidationFailed("attachment points are not distinct")
    order = c.vertices()[:-1]
    pos = {v: i for i, v in enumerate(order)}
    zs = sorted(short, key=lambda z: pos[points[z]])
    rot = _rotate_cycle(c, points[zs[0]])
    rvs = rot.vertices()
    cut = sorted(rvs.index(points[z]) for z in zs) + [len(rot.steps)]
    arcs = [
        Walk(rvs[cut[i]], rot.steps[cut[i] : cut[i + 1]]) for i in range(4)
    ]
    # arcs[i] runs from the i-th to the (i+1)-th attachment point
    p1 = short[zs[0]].concat(arcs[0]).concat(short[zs[1]].reversed())
    p2 = short[zs[2]].concat(arcs[2]).concat(short[zs[3]].reversed())
    s1 = short[zs[1]].concat(arcs[1]).concat(short[zs[2]].reversed())
    s2 = short[zs[3]].concat(arcs[3]).concat(short[zs[0]].reversed())
    _check_pair(g, p1, p2, "4disjoint")
    _check_pair(g, s1, s2, "4disjoint")
    lp = _wlabel(g, p1) ^ _wlabel(g, p2)
    ls = _wlabel(g, s1) ^ _wlabel(g, s2)
    trace.identity("4disjoint", lp ^ ls, _wlabel(g, c))
    if lp == ls:
        raise WitnessValidationFailed("4disjoint pairs collapsed to one label")
    return (p1, p2), (s1, s2)


def three_plus_one_pairs(inst: TriconInstance, c: Walk, attached: dict, fourth, trace):
    """Two distinct-label pairs from three attachments plus one landing path.

    ``attached`` maps three target vertices to disjoint walks ending on C
    at distinct points; ``fourth`` is (target, walk) whose walk ends on
    C or on one of the attached walks, inner vertices off all of them.
    """
    g = inst.g
    cset = set(c.vertices())
    short = {}
    for z, walk in attached.items():
        vs = walk.vertices()
        stop = next(i for i, v in enumerate(vs) if v in cset)
        short[z] = Walk(walk.start, walk.steps[:stop])
    points = {z: w.end for z, w in short.items()}
    if len(set(points.values())) != 3:
        raise WitnessValidationFailed("three attachment points must be distinct")
    d, qd = fourth
    hset = set(cset)
    for w in short.values():
        hset.update(w.vertices())
    vs = qd.vertices()
    stop = next(i for i, v in enumerate(vs) if v in hset)
    qd = Walk(qd.start, qd.steps[:stop])
    p_d = qd.end
    if p_d in cset:
        if p_d in points.values():
            raise WitnessValidationFailed("fourth path landed on an attachment point")
        attachments = dict(short)
        attachments[d] = qd
        return four_disjoint_pairs(inst, c, attachments, trace)
    owner = next(z for z, w in short.items() if p_d in set(w.vertices()))
    b, cc = sorted(set(short) - {owner})
    p = short[owner]
    head = _sub_walk(p, p.start, p_d).concat(qd.reversed())  # owner .. d
    arc1, arc2 = _arcs_between(c, points[b], points[cc])
    q1 = short[b].concat(arc1).concat(short[cc].reversed())
    q2 = short[b].concat(arc2).concat(short[cc].reversed())
    _check_pair(g, head, q1, "3distinct-plus")
    _check_pair(g, head, q2, "3distinct-plus")
    l1 = _wlabel(g, q1)
    l2 = _wlabel(g, q2)
    trace.identity("3distinct-plus", l1 ^ l2, _wlabel(g, c))
    if l1 == l2:
        raise WitnessValidationFailed("3distinct-plus arcs collapsed")
    return (head, q1), (head, q2)


def make_crossing(inst: TriconInstance, pair, trace: ConstructionTrace):
    """Crossing repair for a non-crossing pair (x1-y1 path, x2-y2 path).

    Returns ('two', pairA, pairB) with distinct labels, or ('one', pair0)
    with the same label as the input pair.
    """
    g = inst.g
    p1, p2 = pair
    fan = disjoint_paths(g, tuple(set(p1.vertices())), tuple(set(p2.vertices())), 3)
    links = list(fan.paths)
    choices = []
    for flip1 in (False, True):
        w1 = p1.reversed() if flip1 else p1
        order1 = {v: i for i, v in enumerate(w1.vertices())}
        for flip2 in (False, True):
            w2 = p2.reversed() if flip2 else p2
            order2 = {v: i for i, v in enumerate(w2.vertices())}
            rs = sorted(links, key=lambda r: order1[r.start])
            ranks = sorted(range(3), key=lambda i: order2[rs[i].end])
            sigma = [0, 0, 0]
            for rank, i in enumerate(ranks):
                sigma[i] = rank
            choices.append((sigma, w1, w2, rs))
    config = next((ch for ch in choices if ch[0] == [0, 1, 2]), None)
    case_a = config is not None
    if config is None:
        config = next((ch for ch in choices if ch[0] == [0, 2, 1]), None)
    if config is None:
        raise WitnessValidationFailed("linking paths admit no normal form")
    _, w1, w2, rs = config
    r1, r2, r3 = rs
    x1t, y1t = w1.start, w1.end
    x2t, y2t = w2.start, w2.end
    u = [r.start for r in rs]
    v = [r.end for r in rs]
    x_path = _sub_walk(w1, x1t, u[0]).concat(r1).concat(_sub_walk(w2, v[0], x2t))
    y_path = _sub_walk(w1, y1t, u[1]).concat(r2).concat(_sub_walk(w2, v[1], y2t))
    yp_path = _sub_walk(w1, y1t, u[2]).concat(r3).concat(_sub_walk(w2, v[2], y2t))
    _check_pair(g, x_path, y_path, "2-path-transform")
    _check_pair(g, x_path, yp_path, "2-path-transform")
    if _wlabel(g, y_path) != _wlabel(g, yp_path):
        return "two", (x_path, y_path), (x_path, yp_path)
    # equal labels: build the label-preserving crossing pair
    if case_a:
        x0 = _sub_walk(w1, x1t, u[1]).concat(r2).concat(_sub_walk(w2, v[1], x2t))
        y0 = _sub_walk(w1, y1t, u[2]).concat(r3).concat(_sub_walk(w2, v[2], y2t))
    else:
        x0 = _sub_walk(w1, x1t, u[1]).concat(r2).concat(_sub_walk(w2, v[1], y2t))
        y0 = _sub_walk(w1, y1t, u[2]).concat(r3).concat(_sub_walk(w2, v[2], x2t))
    _check_pair(g, x0, y0, "2-path-transform")
    lhs = (
        _wlabel(g, p1)
        ^ _wlabel(g, p2)
        ^ _wlabel(g, x0)
        ^ _wlabel(g, y0)
    )
    trace.identity("2path-equality", lhs, 0)
    return "one", (x0, y0)


# -------------------------------------------------------------------------
# the case machine
# -------------------------------------------------------------------------


class _Roles:
    """Current assignment of the four target endpoints to role names."""

    __slots__ = ("x1", "y1", "x2", "y2", "E1", "E2")

    def __init__(self, x1, y1, x2, y2, E1, E2):
        self.x1, self.y1, self.x2, self.y2 = x1, y1, x2, y2
        self.E1, self.E2 = E1, E2

    def swap_within_1(self):
        return _Roles(self.y1, self.x1, self.x2, self.y2, self.E1, self.E2)

    def swap_within_2(self):
        return _Roles(self.x1, self.y1, self.y2, self.x2, self.E1, self.E2)

    def swap_pairs(self):
        return _Roles(self.x2, self.y2, self.x1, self.y1, self.E2, self.E1)

    @property
    def targets(self):
        return (self.x1, self.y1, self.x2, self.y2)


def kernel_path_pairs(inst: TriconInstance, c: Walk, trace: ConstructionTrace):
    """Two path pairs with distinct labels from a non-zero cycle in G'."""
    g = inst.g
    x1, y1 = g.endpoints(inst.e1)
    x2, y2 = g.endpoints(inst.e2)
    roles = _Roles(x1, y1, x2, y2, inst.e1, inst.e2)
    current = c
    steps = 0
    while True:
        if steps > 4:
            raise CaseExhaustion("case machine exceeded its transition budget")
        result = _dispatch_case(inst, roles, current, trace)
        if result[0] == "pairs":
            return result[1], result[2]
        current = result[1]
        if _wlabel(g, current) == 0 or len(current) < 3:
            raise CaseExhaustion("case reduction produced an unusable cycle")
        steps += 1
        trace.transitions = steps


def _dispatch_case(inst, roles, c, trace):
    g = inst.g
    cset = set(c.vertices())
    on1 = [v for v in (roles.x1, roles.y1) if v in cset]
    on2 = [v for v in (roles.x2, roles.y2) if v in cset]
    total = len(on1) + len(on2)
    if total == 4:
        trace.cases.append(1)
        pa, pb = _case1(inst, roles, c, trace)
        return "pairs", pa, pb
    if total == 3:
        trace.cases.append(2)
        return _case2(inst, roles, c, trace, on1, on2)
    if total == 2 and (len(on1) == 2 or len(on2) == 2):
        trace.cases.append(3)
        return _case3(inst, roles, c, trace, on1, on2)
    if total == 2:
        trace.cases.append(4)
        return _case4(inst, roles, c, trace, on1, on2)
    if total == 1:
        trace.cases.append(5)
        return _case5(inst, roles, c, trace, on1, on2)
    trace.cases.append(6)
    return _case6(inst, roles, c, trace)


def _case1(inst, roles, c, trace):
    attachments = {z: Walk(z) for z in roles.targets}
    return four_disjoint_pairs(inst, c, attachments, trace)


def _inner_chord(inst, roles, c):
    """A trimmed chord between the inner parts of the two x1-y1 arcs.

    Returns (chord walk, z1, z2) with inner vertices off C; exists because
    removing two vertices keeps a triconnected graph connected.
    """
    g = inst.g
    cset = set(c.vertices())
    arc1, arc2 = _arcs_between(c, roles.x1, roles.y1)
    if roles.x2 in arc1.vertices()[1:-1] or roles.y2 in arc1.vertices()[1:-1]:
        arc1, arc2 = arc2, arc1  # keep the designated first arc clean if possible
    s1 = set(arc1.vertices()[1:-1])
    s2 = set(arc2.vertices()[1:-1])
    if not s1 or not s2:
        raise WitnessValidationFailed("arc without inner vertex in chord search")
    q0 = bfs_path(g, sorted(s1), sorted(s2), forbidden=(roles.x1, roles.y1))
    if q0 is None:
        raise WitnessValidationFailed("triconnectivity promised an arc chord")
    vs = q0.vertices()
    j = next(i for i, v in enumerate(vs) if v in s2)
    i0 = max(i for i in range(j) if vs[i] in cset)
    chord = Walk(vs[i0], q0.steps[i0:j])
    if vs[i0] not in s1:
        raise WitnessValidationFailed("chord start drifted off the first arc")
    return chord, vs[i0], vs[j]


def _split_nonzero(inst, c, chord, trace):
    """Split C along a chord; return the first non-zero side (det. order).

    Both candidate cycles contain the whole chord, so anything living on
    the chord survives into the returned cycle.
    """
    g = inst.g
    a1, a2 = _arcs_between(c, chord.start, chord.end)
    cands = []
    for arc in (a1, a2):
        cyc_edges = arc.edge_ids() + chord.edge_ids()
        cands.append(assemble_cycle(g, cyc_edges))
    for cand in cands:
        if _wlabel(g, cand) != 0 and len(cand) >= 3:
            return cand
    raise WitnessValidationFailed("both chord splits came out zero")


def _case2(inst, roles, c, trace, on1, on2):
    # normalize: the single off-cycle vertex plays the role y2
    if len(on1) == 1:
        roles = roles.swap_pairs()
        on1, on2 = on2, on1
    if roles.x2 not in on2:
        roles = roles.swap_within_2()
    g = inst.g
    chord, z1, z2 = _inner_chord(inst, roles, c)
    if roles.y2 in set(chord.vertices()):
        attachments = {
            roles.x1: Walk(roles.x1),
            roles.y1: Walk(roles.y1),
            roles.x2: Walk(roles.x2),
            roles.y2: _sub_walk(chord, roles.y2, z1),
        }
        pa, pb = four_disjoint_pairs(inst, c, attachments, trace)
        return "pairs", pa, pb
    trace.record("case2.chord", chord)
    return "cycle", _split_nonzero(inst, c, chord, trace)


def _case3(inst, roles, c, trace, on1, on2):
    if len(on2) == 2:
        roles = roles.swap_pairs()
    g = inst.g
    chord, z1, z2 = _inner_chord(inst, roles, c)
    cvs = set(chord.vertices())
    if roles.x2 in cvs and roles.y2 in cvs:
        vs = chord.vertices()
        first, second = sorted((roles.x2, roles.y2), key=vs.index)
        attachments = {
            roles.x1: Walk(roles.x1),
            roles.y1: Walk(roles.y1),
            first: _sub_walk(chord, first, z1),
            second: _sub_walk(chord, second, z2),
        }
        pa, pb = four_disjoint_pairs(inst, c, attachments, trace)
        return "pairs", pa, pb
    trace.record("case3.chord", chord)
    return "cycle", _split_nonzero(inst, c, chord, trace)


def _case4(inst, roles, c, trace, on1, on2):
    # normalize: the on-cycle endpoints are called x1 and x2
    if roles.y1 in on1:
        roles = roles.swap_within_1()
    if roles.y2 in on2:
        roles = roles.swap_within_2()
    g = inst.g
    x1, y1, x2, y2 = roles.targets
    cset = set(c.vertices())
    direct = bfs_path(
        g, (y1,), (y2,), forbidden=sorted(cset), dead_e=inst.dead_gp
    )
    if direct is not None:
        a1, a2 = _arcs_between(c, x1, x2)
        _check_pair(g, a1, direct, "case4-direct")
        _check_pair(g, a2, direct, "case4-direct")
        if _wlabel(g, a1) == _wlabel(g, a2):
            raise WitnessValidationFailed("case 4 arcs carry equal labels")
        return "pairs", (a1, direct), (a2, direct)
    rest = sorted(cset - {x1, x2})
    if len(rest) == 1:
        return _case4_fans(inst, roles, c, rest[0], trace)
    try:
        fan = disjoint_paths(g, (y1, y2), rest, 2, forbidden=(x1, x2))
    except NotEnoughPaths as blocked:
        if len(blocked.cut_vertices) != 1:
            raise WitnessValidationFailed(
                "expected a single separating vertex, got {}".format(
                    blocked.cut_vertices
                )
            )
        z = blocked.cut_vertices[0]
        if z not in cset:
            raise WitnessValidationFailed("separating vertex left the cycle")
        return _case4_fans(inst, roles, c, z, trace)
    qa, qb = fan.paths
    if qa.start != y1:
        qa, qb = qb, qa
    attachments = {x1: Walk(x1), x2: Walk(x2), y1: qa, y2: qb}
    pa, pb = four_disjoint_pairs(inst, c, attachments, trace)
    return "pairs", pa, pb


def _case4_fans(inst, roles, c, z, trace):
    g = inst.g
    x1, y1, x2, y2 = roles.targets
    fan1 = disjoint_paths(g, None, (z, x2), 2, fan_source=y1, forbidden=(x1,))
    fan2 = disjoint_paths(g, None, (z, x1), 2, fan_source=y2, forbidden=(x2,))
    q1 = next(p for p in fan1.paths if p.end == z)
    q2 = next(p for p in fan1.paths if p.end == x2)
    q3 = next(p for p in fan2.paths if p.end == z)
    q4 = next(p for p in fan2.paths if p.end == x1)
    for name, w in (("Q1", q1), ("Q2", q2), ("Q3", q3), ("Q4", q4)):
        trace.record("case4." + name, w)
    p1 = _cycle_arc_avoiding(c, x1, x2, z)
    p2 = _cycle_arc_avoiding(c, z, x2, x1)
    p3 = _cycle_arc_avoiding(c, z, x1, x2)
    pairs = [
        (p1, q1.concat(q3.reversed())),
        (q2, q4),
        (q2, q3.concat(p3)),
        (q4, q1.concat(p2)),
    ]
    for a, b in pairs:
        _check_pair(g, a, b, "case4")
    labels = [_wlabel(g, a) ^ _wlabel(g, b) for a, b in pairs]
    total = labels[0] ^ labels[1] ^ labels[2] ^ labels[3]
    trace.identity("case4", total, _wlabel(g, c))
    for i in range(4):
        for j in range(i + 1, 4):
            if labels[i] != labels[j]:
                return "pairs", pairs[i], pairs[j]
    raise WitnessValidationFailed("four-pair family collapsed to one label")


def _case5(inst, roles, c, trace, on1, on2):
    if len(on2) == 1:
        roles = roles.swap_pairs()
        on1, on2 = on2, on1
    if roles.y1 in on1:
        roles = roles.swap_within_1()
    g = inst.g
    cset = set(c.vertices())
    # 2 disjoint paths from {cycle - x1, y1} to {x2, y2} via an auxiliary hub
    hub = g.n
    extra = sorted(cset - {roles.x1})
    aux = LabeledMultigraph.from_arrays(
        g.n + 1,
        g.k,
        g.edge_u + [hub] * len(extra),
        g.edge_v + extra,
        g.edge_label + [0] * len(extra),
    )
    fan = disjoint_paths(
        aux, (hub, roles.y1), (roles.x2, roles.y2), 2, forbidden=(roles.x1,)
    )
    pa, pb = fan.paths
    if pa.start != roles.y1:
        pa, pb = pb, pa
    q1 = pa
    qv = Walk(pb.steps[0][1], pb.steps[1:])  # drop the hub step
    rvs = qv.reversed()
    vs = rvs.vertices()
    stop = next(i for i, v in enumerate(vs) if v in cset)
    q2 = Walk(rvs.start, rvs.steps[:stop]).reversed()
    if q2.end == roles.y2:
        roles = roles.swap_within_2()
    x1, y1, x2, y2 = roles.targets
    w = q2.start
    trace.record("case5.Q1", q1)
    trace.record("case5.Q2", q2)
    hits = [v for v in q1.vertices() if v in cset]
    if not hits:
        chord = (
            Walk(x1, ((roles.E1, y1),))
            .concat(q1)
            .concat(Walk(y2, ((roles.E2, x2),)))
            .concat(q2.reversed())
        )
        pa, pb = chord_pairs(inst, c, chord, trace)
        return "pairs", pa, pb
    if len(hits) >= 2:
        q1vs = q1.vertices()
        z1 = next(v for v in q1vs if v in cset)
        z2 = next(v for v in reversed(q1vs) if v in cset)
        attachments = {
            x1: Walk(x1),
            y1: _sub_walk(q1, y1, z1),
            y2: _sub_walk(q1, y2, z2),
            x2: q2.reversed(),
        }
        pa, pb = four_disjoint_pairs(inst, c, attachments, trace)
        return "pairs", pa, pb
    z = hits[0]
    return _case5_fans(inst, roles, c, q1, q2, z, w, trace)


def _case5_fans(inst, roles, c, q1, q2, z, w, trace):
    g = inst.g
    x1, y1, x2, y2 = roles.targets
    cset = set(c.vertices())
    h1 = (cset | set(_sub_walk(q1, z, y2).vertices()) | set(q2.vertices())) - {x1}
    fan1 = disjoint_paths(g, None, sorted(h1), 2, fan_source=y1, forbidden=(x1,))
    r1, r2 = fan1.paths
    h2 = (cset | set(_sub_walk(q1, z, y1).vertices()) | set(q2.vertices())) - {x2}
    fan2 = disjoint_paths(g, None, sorted(h2), 2, fan_source=y2, forbidden=(x2,))
    r3, r4 = fan2.paths
    for name, walk in (("R1", r1), ("R2", r2), ("R3", r3), ("R4", r4)):
        trace.record("case5." + name, walk)

    # landings off {z, w} resolve through the three-plus-one lemma
    for r in (r1, r2):
        if r.end not in (z, w):
            return _case5_land_y1(inst, roles, c, q1, q2, z, w, r, trace)
    for r in (r3, r4):
        if r.end not in (x1, z, w):
            return _case5_land_y2(inst, roles, c, q1, q2, z, w, r, trace)
    for r, other in ((r3, r4), (r4, r3)):
        if r.end == x1:
            chord = r.reversed().concat(other)  # x1 .. y2 .. {z or w}
            trace.record("case5.x1chord", chord)
            return "cycle", _split_nonzero(inst, c, chord, trace)
    if r1.end != z:
        r1, r2 = r2, r1
    if r3.end != z:
        r3, r4 = r4, r3
    # an inner vertex shared between the two fans yields a direct answer
    verts34 = {}
    for r in (r3, r4):
        rv = r.vertices()
        for i, v in enumerate(rv):
            if v not in (z, w, y2):
                verts34.setdefault(v, (r, i))
    for r in (r1, r2):
        rv = r.vertices()
        for i, v in enumerate(rv):
            if v in verts34 and v not in (y1, z, w):
                other, j = verts34[v]
                bridge = Walk(y1, r.steps[:i]).concat(_sub_walk(other, v, y2))
                arc1, arc2 = _arcs_between(c, x1, w)
                side1 = arc1.concat(q2)
                side2 = arc2.concat(q2)
                _check_pair(g, side1, bridge, "case5-shared")
                _check_pair(g, side2, bridge, "case5-shared")
                return "pairs", (side1, bridge), (side2, bridge)
    h3 = (cset | set(r1.vertices()) | set(r2.vertices()) | set(r3.vertices()) | set(r4.vertices())) - {y2}
    fan3 = disjoint_paths(g, None, sorted(h3), 2, fan_source=x2, forbidden=(y2,))
    s1, s2 = fan3.paths
    trace.record("case5.S1", s1)
    trace.record("case5.S2", s2)
    for s, other in ((s1, s2), (s2, s1)):
        if s.end not in (x1, z, w):
            return _case5_land_x2(inst, roles, c, z, w, r1, r2, r3, r4, s, trace)
    for s, other in ((s1, s2), (s2, s1)):
        if s.end == x1:
            chord = s.reversed().concat(other)
            trace.record("case5.x2chord", chord)
            return "cycle", _split_nonzero(inst, c, chord, trace)
    if s1.end != z:
        s1, s2 = s2, s1
    # final configuration: an {x2,y2} -> {x1,y1} path avoiding {z, w}
    x0 = bfs_path(g, (x2, y2), (x1, y1), forbidden=(z, w))
    if x0 is None:
        raise WitnessValidationFailed("triconnectivity promised an escape path")
    vs = x0.vertices()
    j = next(i for i, v in enumerate(vs) if v in (x1, y1))
    i0 = max(i for i in range(j + 1) if vs[i] in (x2, y2))
    if i0 > j:
        raise WitnessValidationFailed("escape path trimming failed")
    xw = Walk(vs[i0], x0.steps[i0:j])
    a = xw.start
    if a == x2:
        hset = (cset | set(r1.vertices()) | set(r2.vertices()) | set(r3.vertices()) | set(r4.vertices())) - {z, w}
    else:
        hset = (cset | set(r1.vertices()) | set(r2.vertices()) | set(s1.vertices()) | set(s2.vertices())) - {z, w}
    vs = xw.vertices()
    stop = next(i for i, v in enumerate(vs) if v in hset)
    xw = Walk(xw.start, xw.steps[:stop])
    p = xw.end
    trace.record("case5.X", xw)
    if p != x1:
        if a == x2:
            if p in set(r1.vertices()):
                attached = {x1: Walk(x1), y1: r1, y2: r4}
            elif p in set(r2.vertices()):
                attached = {x1: Walk(x1), y1: r2, y2: r3}
            elif p in set(r3.vertices()):
                attached = {x1: Walk(x1), y1: r2, y2: r3}
            elif p in set(r4.vertices()):
                attached = {x1: Walk(x1), y1: r1, y2: r4}
            else:  # on the cycle
                attached = {x1: Walk(x1), y1: r1, y2: r4}
            pa, pb = three_plus_one_pairs(inst, c, attached, (x2, xw), trace)
            return "pairs", pa, pb
        else:
            if p in set(r1.vertices()):
                attached = {x1: Walk(x1), y1: r1, x2: s2}
            elif p in set(r2.vertices()):
                attached = {x1: Walk(x1), y1: r2, x2: s1}
            elif p in set(s1.vertices()):
                attached = {x1: Walk(x1), y1: r2, x2: s1}
            elif p in set(s2.vertices()):
                attached = {x1: Walk(x1), y1: r1, x2: s2}
            else:
                attached = {x1: Walk(x1), y1: r1, x2: s2}
            pa, pb = three_plus_one_pairs(inst, c, attached, (y2, xw), trace)
            return "pairs", pa, pb
    # p == x1: the escape path reaches x1 directly
    arc_free = _cycle_arc_avoiding(c, z, w, x1)
    both = _arcs_between(c, z, w)
    arc_thru = both[0] if x1 in set(both[0].vertices()) else both[1]
    if a == x2:
        y_one = r1.concat(r3.reversed())
        y_two = r1.concat(arc_free).concat(r4.reversed())
        partner_a, partner_b = y_one, y_two
        fb_edges = r3.edge_ids() + arc_thru.edge_ids() + r4.edge_ids()
    else:
        y_one = r1.concat(s1.reversed())
        y_two = r1.concat(arc_free).concat(s2.reversed())
        partner_a, partner_b = y_one, y_two
        fb_edges = s1.edge_ids() + arc_thru.edge_ids() + s2.edge_ids()
    if _wlabel(g, partner_a) != _wlabel(g, partner_b):
        _check_pair(g, xw, partner_a, "case5-final")
        _check_pair(g, xw, partner_b, "case5-final")
        return "pairs", (xw, partner_a), (xw, partner_b)
    fallback_cycle = assemble_cycle(g, fb_edges)
    trace.record("case5.Cprime", fallback_cycle)
    return "cycle", fallback_cycle


def _case5_land_y1(inst, roles, c, q1, q2, z, w, r, trace):
    g = inst.g
    x1, y1, x2, y2 = roles.targets
    p = r.end
    cset = set(c.vertices())
    tail_y2 = _sub_walk(q1, y2, z)
    if p in cset:
        attachments = {x1: Walk(x1), y1: r, x2: q2.reversed(), y2: tail_y2}
        pa, pb = four_disjoint_pairs(inst, c, attachments, trace)
        return "pairs", pa, pb
    if p in set(tail_y2.vertices()):
        attached = {x1: Walk(x1), x2: q2.reversed(), y2: tail_y2}
    elif p in set(q2.vertices()):
        attached = {x1: Walk(x1), x2: q2.reversed(), y2: tail_y2}
    else:
        raise WitnessValidationFailed("fan landing escaped its target set")
    pa, pb = three_plus_one_pairs(inst, c, attached, (y1, r), trace)
    return "pairs", pa, pb


def _case5_land_y2(inst, roles, c, q1, q2, z, w, r, trace):
    g = inst.g
    x1, y1, x2, y2 = roles.targets
    p = r.end
    cset = set(c.vertices())
    tail_y1 = _sub_walk(q1, y1, z)
    if p in cset:
        attachments = {x1: Walk(x1), y1: tail_y1, x2: q2.reversed(), y2: r}
        pa, pb = four_disjoint_pairs(inst, c, attachments, trace)
        return "pairs", pa, pb
    if p in set(tail_y1.vertices()) or p in set(q2.vertices()):
        attached = {x1: Walk(x1), y1: tail_y1, x2: q2.reversed()}
    else:
        raise WitnessValidationFailed("fan landing escaped its target set")
    pa, pb = three_plus_one_pairs(inst, c, attached, (y2, r), trace)
    return "pairs", pa, pb


def _case5_land_x2(inst, roles, c, z, w, r1, r2, r3, r4, s, trace):
    g = inst.g
    x1, y1, x2, y2 = roles.targets
    p = s.end
    cset = set(c.vertices())
    if p in cset:
        attachments = {x1: Walk(x1), y1: r1, x2: s, y2: r4}
        pa, pb = four_disjoint_pairs(inst, c, attachments, trace)
        return "pairs", pa, pb
    if p in set(r1.vertices()):
        attached = {x1: Walk(x1), y1: r1, y2: r4}
    elif p in set(r2.vertices()):
        attached = {x1: Walk(x1), y1: r2, y2: r3}
    elif p in set(r3.vertices()):
        attached = {x1: Walk(x1), y1: r2, y2: r3}
    elif p in set(r4.vertices()):
        attached = {x1: Walk(x1), y1: r1, y2: r4}
    else:
        raise WitnessValidationFailed("fan landing escaped its target set")
    pa, pb = three_plus_one_pairs(inst, c, attached, (x2, s), trace)
    return "pairs", pa, pb


def _case6(inst, roles, c, trace):
    g = inst.g
    x1, y1, x2, y2 = roles.targets
    cset = sorted(set(c.vertices()))
    fan = disjoint_paths(g, None, cset, 3, fan_source=x1)
    s1 = frozenset((x1, y1))
    s2 = frozenset((x2, y2))

    def families(path):
        f1 = f2 = False
        for e, _ in path.steps:
            se = frozenset(g.endpoints(e))
            if se == s1:
                f1 = True
            elif se == s2:
                f2 = True
        return f1, f2

    flags = [families(p) for p in fan.paths]
    p_f1 = next((p for p, (a, _) in zip(fan.paths, flags) if a), None)
    p_f2 = next((p for p, (_, b) in zip(fan.paths, flags) if b), None)
    if p_f1 is not None and p_f2 is not None:
        if p_f1 is p_f2:
            other = next(
                p for p, fl in zip(fan.paths, flags) if not fl[0] and not fl[1]
            )
            walk = other.reversed().concat(p_f1)
        else:
            walk = p_f1.reversed().concat(p_f2)
        pa, pb = chord_pairs(inst, c, walk, trace)
        return "pairs", pa, pb
    clean = [p for p, fl in zip(fan.paths, flags) if not fl[0] and not fl[1]]
    f1, f2 = clean[0], clean[1]
    chord = f1.reversed().concat(f2)
    trace.record("case6.chord", chord)
    return "cycle", _split_nonzero(inst, c, chord, trace)


# -------------------------------------------------------------------------
# entry points
# -------------------------------------------------------------------------


def shared_endpoint_case(
    inst: TriconInstance, trace: ConstructionTrace, triconnected: bool = True
) -> Outcome:
    """Cycles through two edges sharing an endpoint, via s-t path labels.

    ``triconnected`` lets the path search skip its block decomposition
    (removing the shared vertex then leaves a biconnected graph).
    """
    g = inst.g
    x1, y1 = g.endpoints(inst.e1)
    x2, y2 = g.endpoints(inst.e2)
    if {x1, y1} == {x2, y2}:
        cyc = canonicalize_cycle(g, Walk(x1, ((inst.e1, y1), (inst.e2, x1))))
        return Outcome((_wlabel(g, cyc),), (cyc,), (trace,))
    shared = ({x1, y1} & {x2, y2}).pop()
    a = x1 if y1 == shared else y1
    b = x2 if y2 == shared else y2
    dead_v = bytearray(g.n)
    dead_v[shared] = 1
    res = two_labels_st(g, a, b, dead_v=dead_v, assume_biconnected=triconnected)
    labels = []
    witnesses = []
    for wit in res.witnesses:
        cyc = assemble_cycle(g, wit.edge_ids() + [inst.e1, inst.e2])
        labels.append(_wlabel(g, cyc))
        witnesses.append(cyc)
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    return Outcome(
        tuple(labels[i] for i in order),
        tuple(witnesses[i] for i in order),
        (trace,),
    )


def solve_tricon(inst: TriconInstance, trace: ConstructionTrace | None = None) -> Outcome:
    """Unique label or two distinct-label witness cycles through both edges."""
    if trace is None:
        trace = ConstructionTrace()
    g = inst.g
    x1, y1 = g.endpoints(inst.e1)
    x2, y2 = g.endpoints(inst.e2)
    if {x1, y1} & {x2, y2}:
        return shared_endpoint_case(inst, trace)
    c = find_nonzero_cycle_len3(g, dead_e=inst.dead_gp)
    if c is None:
        fan = disjoint_paths(g, (x1, y1), (x2, y2), 2)
        p1, p2 = fan.paths
        cyc = _close_pair(inst, p1, p2)
        return Outcome((_wlabel(g, cyc),), (cyc,), (trace,))
    pa, pb = kernel_path_pairs(inst, c, trace)
    finals = []
    for pair in (pa, pb):
        p1, p2 = pair
        ends1 = {p1.start, p1.end}
        if ends1 == {x1, y1} or ends1 == {x2, y2}:
            fixed = make_crossing(inst, _orient_noncrossing(pair, x1, y1), trace)
            if fixed[0] == "two":
                finals = [fixed[1], fixed[2]]
                break
            finals.append(fixed[1])
        else:
            finals.append(pair)
    if len(finals) != 2:
        raise WitnessValidationFailed("crossing repair lost a pair")
    cyc_a = _close_pair(inst, *finals[0])
    cyc_b = _close_pair(inst, *finals[1])
    la, lb = _wlabel(g, cyc_a), _wlabel(g, cyc_b)
    if la == lb:
        raise WitnessValidationFailed("final witnesses carry equal labels")
    if lb < la:
        (la, cyc_a), (lb, cyc_b) = (lb, cyc_b), (la, cyc_a)
    return Outcome((la, lb), (cyc_a, cyc_b), (trace,))


def _orient_noncrossing(pair, x1, y1):
    p1, p2 = pair
    if {p1.start, p1.end} == {x1, y1}:
        first, second = p1, p2
    else:
        first, second = p2, p1
    if first.start != x1:
        first = first.reversed()
    return first, second
