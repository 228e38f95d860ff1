"""Block-cut trees and Menger-style vertex-disjoint paths / fans.

All traversals are iterative (no recursion) and scan adjacency in ascending
edge id order, so results are deterministic and safe for large inputs.
Most functions accept optional ``dead_v`` / ``dead_e`` boolean masks to work
on a vertex- or edge-restricted subgraph without copying it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Disconnected, NotEnoughPaths
from .graph import LabeledMultigraph, Walk


@dataclass
class BlockCutTree:
    """Blocks (as edge id lists, discovery order) and cut vertices.

    ``block_of_edge`` maps every alive edge to its unique block,
    ``blocks_of_vertex`` lists the blocks a vertex belongs to (more than
    one exactly for cut vertices), which is the bipartite tree adjacency.
    """

    blocks: list = field(default_factory=list)
    cut_vertices: list = field(default_factory=list)
    block_of_edge: dict = field(default_factory=dict)
    blocks_of_vertex: dict = field(default_factory=dict)

    def block_vertices(self, b: int, g: LabeledMultigraph) -> set:
        verts = set()
        for e in self.blocks[b]:
            verts.add(g.edge_u[e])
            verts.add(g.edge_v[e])
        return verts


def _alive_vertices(g, dead_v):
    if dead_v is None:
        return range(g.n)
    return (v for v in range(g.n) if not dead_v[v])


def block_cut_tree(
    g: LabeledMultigraph, dead_v=None, dead_e=None, require_connected=True
) -> BlockCutTree:
    """Tarjan lowpoint decomposition into blocks and cut vertices.

    With ``require_connected`` (the default) a disconnected alive part
    raises :class:`Disconnected`; otherwise each component is decomposed.
    """
    n = g.n
    adj = g.adj
    eu, ev = g.edge_u, g.edge_v
    disc = [-1] * n
    low = [0] * n
    out = BlockCutTree()
    is_cut = [False] * n
    timer = 0
    roots = 0
    for root in _alive_vertices(g, dead_v):
        if disc[root] != -1:
            continue
        roots += 1
        if roots > 1 and require_connected:
            raise Disconnected("graph is not connected")
        # frame: (v, parent edge, adjacency index)
        stack = [[root, -1, 0]]
        estack = []
        estack_append = estack.append
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        masked = dead_e is not None or dead_v is not None
        while stack:
            frame = stack[-1]
            v, pe, idx = frame
            alist = adj[v]
            la = len(alist)
            dv = disc[v]
            lv = low[v]
            advanced = False
            while idx < la:
                e = alist[idx]
                idx += 1
                if e == pe:
                    continue
                if masked and (
                    (dead_e is not None and dead_e[e])
                ):
                    continue
                w = ev[e] if eu[e] == v else eu[e]
                if masked and dead_v is not None and dead_v[w]:
                    continue
                dw = disc[w]
                if dw == -1:
                    estack_append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    frame[2] = idx
                    low[v] = lv
                    stack.append([w, e, 0])
                    advanced = True
                    break
                if dw < dv:
                    estack_append(e)
                    if dw < lv:
                        lv = dw
            if advanced:
                continue
            low[v] = lv
            stack.pop()
            if not stack:
                break
            parent = stack[-1][0]
            if low[v] < low[parent]:
                low[parent] = low[v]
            if parent == root:
                root_children += 1
            if low[v] >= disc[parent]:
                # pop one block
                block = []
                while True:
                    e = estack.pop()
                    block.append(e)
                    if e == pe:
                        break
                block.reverse()
                b = len(out.blocks)
                out.blocks.append(block)
                verts = set()
                for e in block:
                    out.block_of_edge[e] = b
                    verts.add(eu[e])
                    verts.add(ev[e])
                for u in verts:
                    out.blocks_of_vertex.setdefault(u, []).append(b)
                if parent != root or root_children > 1:
                    is_cut[parent] = True
    out.cut_vertices = [v for v in range(n) if is_cut[v]]
    return out


def block_path(
    bct: BlockCutTree, g: LabeledMultigraph, s: int, t: int
) -> list[tuple[int, int, int]] | None:
    """Blocks traversed by every s-t path, as (block, enter, exit) triples.

    Returns None when no block sequence joins s and t (different
    components).  A trivial same-block query yields a single triple.
    """
    if s == t:
        raise ValueError("s and t must differ")
    s_blocks = bct.blocks_of_vertex.get(s, [])
    t_blocks = set(bct.blocks_of_vertex.get(t, []))
    if not s_blocks or not t_blocks:
        return None
    # BFS over the bipartite block / cut-vertex tree.
    cut_set = set(bct.cut_vertices)
    prev: dict = {}
    queue = []
    for b in s_blocks:
        prev[("b", b)] = None
        queue.append(("b", b))
    goal = None
    qi = 0
    while qi < len(queue):
        kind, x = queue[qi]
        qi += 1
        if kind == "b":
            if x in t_blocks:
                goal = ("b", x)
                break
            for e in bct.blocks[x]:
                for u in (g.edge_u[e], g.edge_v[e]):
                    if u in cut_set and ("c", u) not in prev:
                        prev[("c", u)] = ("b", x)
                        queue.append(("c", u))
        else:
            for b in bct.blocks_of_vertex.get(x, []):
                if ("b", b) not in prev:
                    prev[("b", b)] = ("c", x)
                    queue.append(("b", b))
    if goal is None:
        return None
    chain = []
    node = goal
    while node is not None:
        chain.append(node)
        node = prev[node]
    chain.reverse()
    blocks = [x for kind, x in chain if kind == "b"]
    cuts = [x for kind, x in chain if kind == "c"]
    triples = []
    for i, b in enumerate(blocks):
        enter = s if i == 0 else cuts[i - 1]
        exit_ = t if i == len(blocks) - 1 else cuts[i]
        triples.append((b, enter, exit_))
    return triples


@dataclass(frozen=True)
class FanResult:
    """Paths found by :func:`disjoint_paths`, in deterministic order."""

    paths: tuple[Walk, ...]


def disjoint_paths(
    g: LabeledMultigraph,
    a,
    b,
    count: int,
    fan_source: int | None = None,
    forbidden=(),
    dead_v=None,
    dead_e=None,
) -> FanResult:
    """`count` vertex-disjoint A-B paths, or an s-B fan sharing only s.

    Inner vertices avoid A, B and ``forbidden`` entirely.  Implemented as
    unit-vertex-capacity augmenting search (at most ``count`` breadth-first
    augmentations, ascending edge id order), so it runs in
    O(count * (n + m)).  Raises :class:`NotEnoughPaths`, carrying the
    blocking cut vertices, when fewer paths exist; that always signals a
    violated connectivity precondition in this package.
    """
    n = g.n
    adj = g.adj
    eu, ev = g.edge_u, g.edge_v
    bset = set(b)
    if fan_source is not None:
        sources = [fan_source]
        src_cap = {fan_source: count}
        if fan_source in bset:
            raise ValueError("fan source may not lie in the target set")
    else:
        sources = sorted(set(a))
        src_cap = {v: 1 for v in sources}
    blocked = bytearray(n)
    for v in forbidden:
        blocked[v] = 1
    if dead_v is not None:
        for v in range(n):
            if dead_v[v]:
                blocked[v] = 1
    for v in sources:
        if blocked[v]:
            raise ValueError("source vertex {} is forbidden".format(v))
    trivial = []
    if fan_source is None:
        for v in sources:
            if v in bset and len(trivial) < count:
                trivial.append(Walk(v))
    if trivial:
        tset = {w.start for w in trivial}
        sources = [v for v in sources if v not in tset]
        bset = bset - tset
        for v in tset:
            blocked[v] = 1
            del src_cap[v]
    need = count - len(trivial)
    if need <= 0:
        return FanResult(tuple(trivial[:count]))
    for v in bset:
        if blocked[v]:
            raise ValueError("target vertex {} is forbidden".format(v))

    is_b = bytearray(n)
    for v in bset:
        is_b[v] = 1
    is_endpoint = bytearray(n)
    for v in bset:
        is_endpoint[v] = 1
    for v in sources:
        is_endpoint[v] = 1
    # with fewer targets than paths, targets are shared (internally
    # disjoint s-t paths); otherwise every path ends at its own target
    snk_cap = count - len(trivial) if len(bset) < count - len(trivial) else 1

    # Implicit node-split residual network.  State 2*v is "v entered",
    # 2*v+1 is "v left"; eflow bit 0 = u->v used, bit 1 = v->u used.
    eflow = bytearray(g.m)
    through = bytearray(n)
    snk_used = [0] * n
    src_used = {v: 0 for v in sources}
    parent_state = [-1] * (2 * n)
    parent_via = [-1] * (2 * n)
    stamp = [0] * (2 * n)
    run = 0
    found = 0
    last_reached: list[int] = []

    while found < need:
        run += 1
        queue = []
        for v in sources:
            if src_used[v] < src_cap[v]:
                s0 = 2 * v + 1
                stamp[s0] = run
                parent_state[s0] = -1
                queue.append(s0)
        goal = -1
        qi = 0
        while qi < len(queue):
            state = queue[qi]
            qi += 1
            v, side = state >> 1, state & 1
            if side == 1:
                # leaving v: forward edge arcs, or cancel v's through-arc
                for e in adj[v]:
                    if dead_e is not None and dead_e[e]:
                        continue
                    u, w = eu[e], ev[e]
                    o = w if u == v else u
                    if blocked[o]:
                        continue
                    bit = 1 if u == v else 2
                    if eflow[e] & bit:
                        continue
                    nxt = 2 * o
                    if stamp[nxt] != run:
                        stamp[nxt] = run
                        parent_state[nxt] = state
                        parent_via[nxt] = e
                        if is_b[o] and snk_used[o] < snk_cap:
                            goal = nxt
                            break
                        queue.append(nxt)
                if goal != -1:
                    break
                if through[v]:
                    nxt = state - 1
                    if stamp[nxt] != run:
                        stamp[nxt] = run
                        parent_state[nxt] = state
                        parent_via[nxt] = -1
                        queue.append(nxt)
            else:
                # entered v: pass through it, or cancel an incoming edge arc
                if not through[v] and not is_endpoint[v]:
                    nxt = state + 1
                    if stamp[nxt] != run:
                        stamp[nxt] = run
                        parent_state[nxt] = state
                        parent_via[nxt] = -1
                        queue.append(nxt)
                for e in adj[v]:
                    if dead_e is not None and dead_e[e]:
                        continue
                    u, w = eu[e], ev[e]
                    o = w if u == v else u
                    bit = 1 if u == o else 2  # arc o -> v
                    if not eflow[e] & bit:
                        continue
                    nxt = 2 * o + 1
                    if stamp[nxt] != run:
                        stamp[nxt] = run
                        parent_state[nxt] = state
                        parent_via[nxt] = e
                        queue.append(nxt)
        if goal == -1:
            last_reached = [st for st in range(2 * n) if stamp[st] == run]
            break
        # apply the augmenting path
        snk_used[goal >> 1] += 1
        state = goal
        while parent_state[state] != -1 or (state & 1 and (state >> 1) in src_used):
            prev = parent_state[state]
            if prev == -1:
                break
            via = parent_via[state]
            if via >= 0:
                pv = prev >> 1
                u, w = eu[via], ev[via]
                if (state & 1) == 0:
                    # forward arc pv -> state vertex
                    bit = 1 if u == pv else 2
                    eflow[via] |= bit
                else:
                    # cancel arc (state vertex) -> pv
                    o = state >> 1
                    bit = 1 if u == o else 2
                    eflow[via] &= ~bit
            else:
                v = state >> 1
                if state & 1:
                    through[v] = 1
                else:
                    through[v] = 0
            state = prev
        src_used[state >> 1] += 1
        found += 1

    if found < need:
        cut = sorted(
            v
            for v in range(n)
            if stamp[2 * v] == run and stamp[2 * v + 1] != run and not blocked[v]
        )
        raise NotEnoughPaths(
            "found {} of {} disjoint paths".format(found + len(trivial), count),
            found=found + len(trivial),
            cut_vertices=cut,
        )

    # flow decomposition into explicit walks, consuming flags as we go
    paths = list(trivial)
    for v in sources:
        for e in adj[v]:
            if src_used[v] == 0:
                break
            u, w = eu[e], ev[e]
            o = w if u == v else u
            bit = 1 if u == v else 2
            if not eflow[e] & bit:
                continue
            eflow[e] &= ~bit
            src_used[v] -= 1
            steps = [(e, o)]
            cur = o
            while not (is_b[cur] and snk_used[cur] > 0):
                through[cur] = 0
                nxt_e = -1
                for e2 in adj[cur]:
                    u2, w2 = eu[e2], ev[e2]
                    o2 = w2 if u2 == cur else u2
                    bit2 = 1 if u2 == cur else 2
                    if eflow[e2] & bit2:
                        nxt_e = e2
                        break
                if nxt_e == -1:  # conservation guarantees this never happens
                    raise AssertionError("flow decomposition lost the trail")
                u2, w2 = eu[nxt_e], ev[nxt_e]
                o2 = w2 if u2 == cur else u2
                eflow[nxt_e] &= ~(1 if u2 == cur else 2)
                steps.append((nxt_e, o2))
                cur = o2
            snk_used[cur] -= 1
            paths.append(Walk(v, tuple(steps)))
    if len(paths) != count:
        raise AssertionError("expected {} paths, extracted {}".format(count, len(paths)))
    return FanResult(tuple(paths))


def connected_component(g: LabeledMultigraph, v: int, dead_v=None, dead_e=None) -> set:
    """Vertices reachable from v in the alive subgraph."""
    seen = {v}
    stack = [v]
    adj = g.adj
    eu, ev = g.edge_u, g.edge_v
    while stack:
        x = stack.pop()
        for e in adj[x]:
            if dead_e is not None and dead_e[e]:
                continue
            o = ev[e] if eu[e] == x else eu[e]
            if o in seen or (dead_v is not None and dead_v[o]):
                continue
            seen.add(o)
            stack.append(o)
    return seen


def bfs_path(
    g: LabeledMultigraph, sources, targets, dead_v=None, dead_e=None, forbidden=()
) -> Walk | None:
    """Shortest path from any source to any target, ascending edge order."""
    n = g.n
    blocked = bytearray(n)
    for v in forbidden:
        blocked[v] = 1
    if dead_v is not None:
        for v in range(n):
            if dead_v[v]:
                blocked[v] = 1
    tset = set(targets)
    prev_e = [-1] * n
    prev_v = [-1] * n
    seen = bytearray(n)
    queue = []
    for s in sorted(set(sources)):
        if blocked[s]:
            continue
        seen[s] = 1
        queue.append(s)
        if s in tset:
            return Walk(s)
    adj = g.adj
    eu, ev = g.edge_u, g.edge_v
    qi = 0
    goal = -1
    while qi < len(queue) and goal == -1:
        v = queue[qi]
        qi += 1
        for e in adj[v]:
            if dead_e is not None and dead_e[e]:
                continue
            o = ev[e] if eu[e] == v else eu[e]
            if seen[o] or blocked[o]:
                continue
            seen[o] = 1
            prev_e[o] = e
            prev_v[o] = v
            if o in tset:
                goal = o
                break
            queue.append(o)
    if goal == -1:
        return None
    steps = []
    cur = goal
    while prev_e[cur] != -1:
        steps.append((prev_e[cur], cur))
        cur = prev_v[cur]
    steps.reverse()
    return Walk(cur, tuple(steps))
