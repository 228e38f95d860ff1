"""SPQR trees of biconnected multigraphs.

``build_spqr`` runs the Hopcroft-Tarjan triconnected-components algorithm
(with the Gutwenger-Mutzel corrections: exact TSTACK edge conditions,
high-point list maintenance under splits, and the degree-two chain case),
then normalizes split components into the unique SPQR tree: adjacent
polygons and adjacent bonds are merged, and every original edge is wrapped
in its own Q-node.  Skeleton edges of S/P/R nodes are therefore all
virtual; each pairs with either another internal node or a Q-node leaf.

Working edges live in parallel arrays indexed by dense ids; everything is
iterative and the total skeleton size is O(n + m).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotBiconnected, NotQNode, TooSmall
from .graph import LabeledMultigraph


class _LazySkeletons:
    """Skeleton list with Q-node entries materialized on demand.

    Q-node skeletons are formulaic ([(u, v, 'r', eid), (u, v, 'v', tid)]),
    so only internal S/P/R skeletons are stored; everything else is built
    from the compact per-Q record when asked for.
    """

    __slots__ = ("internal", "q_records")

    def __init__(self, internal, q_records):
        self.internal = internal
        self.q_records = q_records

    def __len__(self):
        return len(self.internal) + len(self.q_records)

    def __getitem__(self, i):
        ni = len(self.internal)
        if 0 <= i < ni:
            return self.internal[i]
        u, v, oid, tid = self.q_records[i - ni]
        return [(u, v, "r", oid), (u, v, "v", tid)]

    def __iter__(self):
        yield from self.internal
        for u, v, oid, tid in self.q_records:
            yield [(u, v, "r", oid), (u, v, "v", tid)]


class SpqrTree:
    """S/P/Q/R nodes with skeletons and explicit virtual-edge pairing.

    ``skeletons[i]`` lists (u, v, kind, ref): kind 'r' means a real edge
    with original edge id ref (Q-nodes only), kind 'v' a virtual edge with
    tree edge id ref.  ``tree_edges[t]`` is (node_a, slot_a, node_b,
    slot_b) locating the paired virtual edges in both skeletons.
    ``q_real_edge[i]`` is the original edge of Q-node i (-1 otherwise).
    """

    __slots__ = (
        "n", "m", "kinds", "skeletons", "tree_edges", "q_of_edge",
        "q_real_edge", "internal_count", "_adjacency", "_internal_tree_edges",
    )

    def __init__(self, n, m, kinds, skeletons, tree_edges, q_of_edge,
                 q_real_edge=None, internal_count=None, internal_tree_edges=None):
        self.n = n
        self.m = m
        self.kinds = kinds
        self.skeletons = skeletons
        self.tree_edges = tree_edges
        self.q_of_edge = q_of_edge
        if q_real_edge is None:
            q_real_edge = [-1] * len(kinds)
            for i, kind in enumerate(kinds):
                if kind == "Q":
                    for u, v, k, ref in skeletons[i]:
                        if k == "r":
                            q_real_edge[i] = ref
            internal_count = sum(1 for k in kinds if k != "Q")
        self.q_real_edge = q_real_edge
        self.internal_count = internal_count
        self._adjacency = None
        self._internal_tree_edges = internal_tree_edges

    @property
    def adjacency(self):
        if self._adjacency is None:
            adjacency = [[] for _ in self.kinds]
            for t, (na, _, nb, _) in enumerate(self.tree_edges):
                adjacency[na].append((t, nb))
                adjacency[nb].append((t, na))
            self._adjacency = adjacency
        return self._adjacency

    @property
    def node_count(self):
        return len(self.kinds)

    @property
    def internal_tree_edges(self):
        if self._internal_tree_edges is None:
            ni = self.internal_count
            self._internal_tree_edges = [
                t
                for t, (na, _, nb, _) in enumerate(self.tree_edges)
                if na < ni and nb < ni
            ]
        return self._internal_tree_edges

    def skeleton_vertices(self, i):
        verts = set()
        for u, v, _, _ in self.skeletons[i]:
            verts.add(u)
            verts.add(v)
        return verts

    def pair_slot(self, node, slot):
        """The (node, slot) holding the partner of a virtual skeleton edge."""
        ref = self.skeletons[node][slot][3]
        na, sa, nb, sb = self.tree_edges[ref]
        if na == node and sa == slot:
            return nb, sb
        return na, sa

    def skeleton_size_sum(self):
        return sum(len(s) for s in self.skeletons)


class _HNode:
    __slots__ = ("val", "prev", "next")

    def __init__(self, val):
        self.val = val
        self.prev = None
        self.next = None


class _HighList:
    """Doubly-linked high-point list with O(1) delete and insert-before."""

    __slots__ = ("head", "tail")

    def __init__(self):
        self.head = _HNode(0)
        self.tail = _HNode(0)
        self.head.next = self.tail
        self.tail.prev = self.head

    def append(self, val):
        node = _HNode(val)
        last = self.tail.prev
        last.next = node
        node.prev = last
        node.next = self.tail
        self.tail.prev = node
        return node

    def insert_before(self, node, val):
        fresh = _HNode(val)
        fresh.prev = node.prev
        fresh.next = node
        node.prev.next = fresh
        node.prev = fresh
        return fresh

    def delete(self, node):
        node.prev.next = node.next
        node.next.prev = node.prev
        node.prev = node.next = None

    def first(self):
        node = self.head.next
        return node.val if node is not self.tail else 0


def _split_components(g: LabeledMultigraph):
    """Hopcroft-Tarjan split components of a biconnected multigraph.

    Working edges are ints into parallel arrays; returns (components,
    W_u, W_v, W_oid) where each component is a list of working edge ids
    and virtual edges (oid -1) appear in exactly two components.
    """
    n, m = g.n, g.m
    g_eu, g_ev = g.edge_u, g.edge_v

    W_u: list[int] = []
    W_v: list[int] = []
    W_oid: list[int] = []
    components: list[list[int]] = []

    def new_edge(u, v, oid):
        W_u.append(u)
        W_v.append(v)
        W_oid.append(oid)
        return len(W_u) - 1

    # --- bundle parallel edges into bond components -------------------
    packed = [0] * m
    for e in range(m):
        u, v = g_eu[e], g_ev[e]
        packed[e] = (u * n + v) if u < v else (v * n + u)
    order = np.argsort(np.asarray(packed, dtype=np.int64), kind="stable").tolist()
    simple: list[int] = []
    i = 0
    while i < m:
        j = i + 1
        key = packed[order[i]]
        while j < m and packed[order[j]] == key:
            j += 1
        a, b = divmod(key, n)
        if j - i == 1:
            simple.append(new_edge(a, b, order[i]))
        else:
            bond = [new_edge(g_eu[e], g_ev[e], e) for e in order[i:j]]
            virt = new_edge(a, b, -1)
            bond.append(virt)
            components.append(bond)
            simple.append(virt)
        i = j

    if n == 2:
        # pure bond: the bundling step already made the single component,
        # except its trailing virtual edge has no partner; undo that.
        components[0].pop()
        W_u.pop(), W_v.pop(), W_oid.pop()
        return components, W_u, W_v, W_oid

    # --- phase 1: DFS numbering, lowpoints, subtree sizes -------------
    pre_adj: list[list[int]] = [[] for _ in range(n)]
    for w in simple:
        pre_adj[W_u[w]].append(w)
        pre_adj[W_v[w]].append(w)

    number = [0] * n
    low1v = list(range(n))
    low2v = list(range(n))
    low1n = [0] * n  # number[] of low1v, maintained in lockstep
    low2n = [0] * n
    nd = [1] * n
    father = [-1] * n
    tree_arc = [-1] * n
    W_tree = bytearray(len(W_u))
    oriented = bytearray(len(W_u))
    root = 0
    number[root] = 1
    low1n[root] = low2n[root] = 1
    cnt = 1
    root_children = 0
    stack = [[root, 0]]
    while stack:
        frame = stack[-1]
        v, idx = frame
        alist = pre_adj[v]
        la = len(alist)
        nv = number[v]
        l1 = low1n[v]
        l2 = low2n[v]
        advanced = False
        while idx < la:
            w = alist[idx]
            idx += 1
            if oriented[w]:
                continue
            o = W_v[w] if W_u[w] == v else W_u[w]
            no = number[o]
            if no == 0:
                oriented[w] = 1
                W_u[w] = v
                W_v[w] = o
                W_tree[w] = 1
                father[o] = v
                tree_arc[o] = w
                cnt += 1
                number[o] = cnt
                low1n[o] = low2n[o] = cnt
                frame[1] = idx
                low1n[v] = l1
                low2n[v] = l2
                stack.append([o, 0])
                advanced = True
                break
            if no < nv:
                oriented[w] = 1
                W_u[w] = v
                W_v[w] = o
                if no < l1:
                    low2v[v] = low1v[v]
                    l2 = l1
                    low1v[v] = o
                    l1 = no
                elif no > l1 and no < l2:
                    low2v[v] = o
                    l2 = no
        if advanced:
            continue
        frame[1] = idx
        low1n[v] = l1
        low2n[v] = l2
        stack.pop()
        if stack:
            p = stack[-1][0]
            if p == root:
                root_children += 1
            elif l1 >= number[p]:
                raise NotBiconnected("articulation vertex {}".format(p))
            nd[p] += nd[v]
            for cand, nc in ((low1v[v], l1), (low2v[v], l2)):
                if nc < low1n[p]:
                    low2v[p] = low1v[p]
                    low2n[p] = low1n[p]
                    low1v[p] = cand
                    low1n[p] = nc
                elif nc > low1n[p] and nc < low2n[p]:
                    low2v[p] = cand
                    low2n[p] = nc
    if cnt != n:
        raise NotBiconnected("graph is not connected")
    if root_children > 1:
        raise NotBiconnected("articulation vertex {}".format(root))

    # --- phase 2: acceptable adjacency structure ----------------------
    phis = [0] * len(simple)
    for i, w in enumerate(simple):
        if W_tree[w]:
            child = W_v[w]
            if low2n[child] < number[W_u[w]]:
                phis[i] = 3 * low1n[child]
            else:
                phis[i] = 3 * low1n[child] + 2
        else:
            phis[i] = 3 * number[W_v[w]] + 1
    adj: list[list[int]] = [[] for _ in range(n)]
    W_slotv = [-1] * len(W_u)
    W_sloti = [-1] * len(W_u)
    for i in np.argsort(np.asarray(phis, dtype=np.int64), kind="stable").tolist():
        w = simple[i]
        u = W_u[w]
        lst = adj[u]
        W_slotv[w] = u
        W_sloti[w] = len(lst)
        lst.append(w)

    # --- phase 3: path decomposition, new numbering, high points ------
    newnum = [0] * n
    high = [None] * n
    W_start = bytearray(len(W_u))
    W_hnode = [None] * len(W_u)
    m_count = n
    open_path = False
    newnum[root] = m_count - nd[root] + 1
    stack = [[root, 0]]
    while stack:
        frame = stack[-1]
        v, idx = frame
        alist = adj[v]
        la = len(alist)
        advanced = False
        while idx < la:
            w = alist[idx]
            idx += 1
            if not open_path:
                W_start[w] = 1
                open_path = True
            if W_tree[w]:
                o = W_v[w]
                newnum[o] = m_count - nd[o] + 1
                frame[1] = idx
                stack.append([o, 0])
                advanced = True
                break
            open_path = False
            t = W_v[w]
            hl = high[t]
            if hl is None:
                hl = high[t] = _HighList()
            W_hnode[w] = hl.append(newnum[v])
        if advanced:
            continue
        frame[1] = idx
        stack.pop()
        if stack:
            m_count -= 1

    low1 = [0] * n
    low2 = [0] * n
    for v in range(n):
        low1[v] = newnum[low1v[v]]
        low2[v] = newnum[low2v[v]]
    del low1n, low2n
    nodeat = [0] * (n + 1)
    for v in range(n):
        nodeat[newnum[v]] = v

    degree = [0] * n
    outv = [0] * n
    for w in simple:
        degree[W_u[w]] += 1
        degree[W_v[w]] += 1
        if W_tree[w]:
            outv[W_u[w]] += 1

    W_dead = bytearray(len(W_u))
    NEW = newnum
    estack: list[int] = []
    tstack: list = []  # (h, a, b) triples in NEW numbers; None is EOS
    root_num = NEW[root]

    def kill(w, comp):
        comp.append(w)
        W_dead[w] = 1
        degree[W_u[w]] -= 1
        degree[W_v[w]] -= 1
        if W_tree[w]:
            outv[W_u[w]] -= 1
        node = W_hnode[w]
        if node is not None:
            high[W_v[w]].delete(node)
            W_hnode[w] = None

    def revive(w, tree, slotv=-1, sloti=-1):
        W_tree[w] = 1 if tree else 0
        W_dead[w] = 0
        degree[W_u[w]] += 1
        degree[W_v[w]] += 1
        if tree:
            outv[W_u[w]] += 1
        W_slotv[w] = slotv
        W_sloti[w] = sloti
        if slotv >= 0:
            adj[slotv][sloti] = w

    # --- phase 4: path search with TSTACK/ESTACK splitting ------------
    frames = [[root, 0, -1]]  # vertex, adjacency index, pending tree edge
    while frames:
        frame = frames[-1]
        v = frame[0]
        pending = frame[2]
        if pending >= 0:
            e = pending
            frame[2] = -1
            w_vertex = W_v[e]
            estack.append(tree_arc[w_vertex])
            vnum = NEW[v]
            w = w_vertex
            cur_slotv = W_slotv[e]
            cur_sloti = W_sloti[e]
            # ---- type-2 maintenance loop
            while vnum != root_num:
                trip = tstack[-1] if tstack and tstack[-1] is not None else None
                chain = False
                if degree[w] == 2:
                    fc = -1
                    for cand in adj[w]:
                        if not W_dead[cand]:
                            fc = cand
                            break
                    if fc >= 0:
                        o = W_v[fc] if W_u[fc] == w else W_u[fc]
                        if NEW[o] > NEW[w]:
                            chain = True
                if not (chain or (trip is not None and trip[1] == vnum)):
                    break
                if (
                    trip is not None
                    and trip[1] == vnum
                    and father[nodeat[trip[2]]] == nodeat[trip[1]]
                ):
                    tstack.pop()
                    continue
                e_ab = -1
                if chain:
                    e1_ = estack.pop()
                    e2_ = estack.pop()
                    comp: list[int] = []
                    kill(e1_, comp)
                    kill(e2_, comp)
                    x = W_v[e2_] if W_u[e2_] == w else W_u[e2_]
                    e_virt = new_edge(v, x, -1)
                    W_tree.append(0)
                    W_start.append(0)
                    W_dead.append(1)
                    W_hnode.append(None)
                    W_slotv.append(-1)
                    W_sloti.append(-1)
                    comp.append(e_virt)
                    components.append(comp)
                    if estack:
                        top = estack[-1]
                        if (W_u[top] == x and W_v[top] == v) or (
                            W_u[top] == v and W_v[top] == x
                        ):
                            e_ab = estack.pop()
                            kill(e_ab, [])
                else:
                    h, a, b = tstack.pop()
                    comp = []
                    while estack:
                        top = estack[-1]
                        tu, tv = NEW[W_u[top]], NEW[W_v[top]]
                        if not (a <= tu <= h and a <= tv <= h):
                            break
                        if (tu == a and tv == b) or (tu == b and tv == a):
                            e_ab = estack.pop()
                            kill(e_ab, [])
                        else:
                            kill(estack.pop(), comp)
                    x = nodeat[b]
                    e_virt = new_edge(v, x, -1)
                    W_tree.append(0)
                    W_start.append(0)
                    W_dead.append(1)
                    W_hnode.append(None)
                    W_slotv.append(-1)
                    W_sloti.append(-1)
                    comp.append(e_virt)
                    components.append(comp)
                if e_ab >= 0:
                    bond = [e_ab, e_virt]
                    e_virt = new_edge(v, x, -1)
                    W_tree.append(0)
                    W_start.append(0)
                    W_dead.append(1)
                    W_hnode.append(None)
                    W_slotv.append(-1)
                    W_sloti.append(-1)
                    bond.append(e_virt)
                    components.append(bond)
                estack.append(e_virt)
                revive(e_virt, tree=True, slotv=cur_slotv, sloti=cur_sloti)
                tree_arc[x] = e_virt
                father[x] = v
                w = x
            # ---- type-1 check
            wnum = NEW[w]
            if (
                low2[w] >= vnum
                and low1[w] < vnum
                and (father[v] != root or outv[v] >= 2)
            ):
                comp = []
                hi = wnum + nd[w] - 1
                low_vertex = nodeat[low1[w]]
                deferred = []
                while estack:
                    top = estack[-1]
                    tu, tv = NEW[W_u[top]], NEW[W_v[top]]
                    if not (wnum <= tu <= hi or wnum <= tv <= hi):
                        break
                    top = estack.pop()
                    comp.append(top)
                    W_dead[top] = 1
                    degree[W_u[top]] -= 1
                    degree[W_v[top]] -= 1
                    if W_tree[top]:
                        outv[W_u[top]] -= 1
                    node = W_hnode[top]
                    if node is not None:
                        if W_v[top] == low_vertex:
                            deferred.append(node)  # unlink later
                        else:
                            high[W_v[top]].delete(node)
                        W_hnode[top] = None
                e_virt = new_edge(v, low_vertex, -1)
                W_tree.append(0)
                W_start.append(0)
                W_dead.append(1)
                W_hnode.append(None)
                W_slotv.append(-1)
                W_sloti.append(-1)
                comp.append(e_virt)
                components.append(comp)
                e_ab = -1
                if estack:
                    top = estack[-1]
                    if (W_u[top] == v and W_v[top] == low_vertex) or (
                        W_u[top] == low_vertex and W_v[top] == v
                    ):
                        e_ab = estack.pop()
                        W_dead[e_ab] = 1
                        degree[W_u[e_ab]] -= 1
                        degree[W_v[e_ab]] -= 1
                        node = W_hnode[e_ab]
                        if node is not None:
                            deferred.append(node)
                            W_hnode[e_ab] = None
                        bond = [e_ab, e_virt]
                        e_virt = new_edge(v, low_vertex, -1)
                        W_tree.append(0)
                        W_start.append(0)
                        W_dead.append(1)
                        W_hnode.append(None)
                        W_slotv.append(-1)
                        W_sloti.append(-1)
                        bond.append(e_virt)
                        components.append(bond)
                if low_vertex != father[v]:
                    estack.append(e_virt)
                    revive(e_virt, tree=False)
                    # the replacement frond takes the list position of the
                    # earliest high-point entry it replaces
                    hl = high[low_vertex]
                    if hl is None:
                        hl = high[low_vertex] = _HighList()
                    anchor = None
                    if deferred:
                        ids = set(map(id, deferred))
                        node = hl.head.next
                        while node is not hl.tail:
                            if id(node) in ids:
                                anchor = node
                                break
                            node = node.next
                    if anchor is not None:
                        W_hnode[e_virt] = hl.insert_before(anchor, vnum)
                    else:
                        W_hnode[e_virt] = hl.append(vnum)
                    for node in deferred:
                        high[low_vertex].delete(node)
                else:
                    for node in deferred:
                        high[low_vertex].delete(node)
                    old = tree_arc[v]
                    bond2 = [e_virt, old]
                    degree[W_u[old]] -= 1
                    degree[W_v[old]] -= 1
                    outv[W_u[old]] -= 1
                    W_dead[old] = 1
                    e_virt2 = new_edge(low_vertex, v, -1)
                    W_tree.append(0)
                    W_start.append(0)
                    W_dead.append(1)
                    W_hnode.append(None)
                    W_slotv.append(-1)
                    W_sloti.append(-1)
                    bond2.append(e_virt2)
                    components.append(bond2)
                    revive(e_virt2, tree=True, slotv=W_slotv[old], sloti=W_sloti[old])
                    tree_arc[v] = e_virt2
            if W_start[e]:
                while tstack:
                    item = tstack.pop()
                    if item is None:
                        break
            while tstack and tstack[-1] is not None:
                h, a, b = tstack[-1]
                if a != vnum and b != vnum:
                    hl = high[v]
                    if hl is not None and hl.first() > h:
                        tstack.pop()
                        continue
                break
            continue
        idx = frame[1]
        alist = adj[v]
        la = len(alist)
        advanced = False
        while idx < la:
            e = alist[idx]
            idx += 1
            if W_dead[e]:
                continue
            if W_tree[e]:
                if W_start[e]:
                    child = W_v[e]
                    y = 0
                    popped = False
                    last_b = 0
                    lo = low1[child]
                    while tstack and tstack[-1] is not None and tstack[-1][1] > lo:
                        h, a, b = tstack.pop()
                        if h > y:
                            y = h
                        popped = True
                        last_b = b
                    if not popped:
                        tstack.append((NEW[child] + nd[child] - 1, lo, NEW[v]))
                    else:
                        tstack.append((max(y, NEW[child] + nd[child] - 1), lo, last_b))
                    tstack.append(None)  # EOS
                frame[1] = idx
                frame[2] = e
                frames.append([W_v[e], 0, -1])
                advanced = True
                break
            # frond v -> w
            w = W_v[e]
            if W_start[e]:
                y = 0
                popped = False
                last_b = 0
                nw = NEW[w]
                while tstack and tstack[-1] is not None and tstack[-1][1] > nw:
                    h, a, b = tstack.pop()
                    if h > y:
                        y = h
                    popped = True
                    last_b = b
                if not popped:
                    tstack.append((NEW[v], nw, NEW[v]))
                else:
                    tstack.append((y, nw, last_b))
            if w == father[v]:
                # frond parallel to the tree arc: split off a bond
                comp = []
                kill(e, comp)
                old = tree_arc[v]
                degree[W_u[old]] -= 1
                degree[W_v[old]] -= 1
                outv[W_u[old]] -= 1
                W_dead[old] = 1
                comp.append(old)
                e_virt = new_edge(w, v, -1)
                W_tree.append(0)
                W_start.append(0)
                W_dead.append(1)
                W_hnode.append(None)
                W_slotv.append(-1)
                W_sloti.append(-1)
                comp.append(e_virt)
                components.append(comp)
                revive(e_virt, tree=True, slotv=W_slotv[old], sloti=W_sloti[old])
                tree_arc[v] = e_virt
            else:
                estack.append(e)
        if advanced:
            continue
        frame[1] = idx
        frames.pop()

    if estack:
        estack.reverse()
        components.append(estack)
    return components, W_u, W_v, W_oid


def build_spqr(g: LabeledMultigraph, check: bool = True) -> SpqrTree:
    """The unique SPQR tree of a biconnected multigraph with >= 3 edges.

    Splitting itself detects disconnected or 1-cut inputs and raises
    :class:`NotBiconnected`, so no separate screen is run (the ``check``
    parameter is kept for call-site documentation).
    """
    if g.m < 3:
        raise TooSmall("SPQR tree needs at least 3 edges, got {}".format(g.m))
    if g.n < 2:
        raise NotBiconnected("too few vertices")
    components, W_u, W_v, W_oid = _split_components(g)

    # --- classify and merge adjacent same-type components -------------
    nc = len(components)
    kinds = [""] * nc
    for ci, comp in enumerate(components):
        verts = set()
        for w in comp:
            verts.add(W_u[w])
            verts.add(W_v[w])
        if len(verts) == 2:
            kinds[ci] = "P"
        elif len(comp) == len(verts):
            kinds[ci] = "S"
        else:
            kinds[ci] = "R"
    first_comp = [-1] * len(W_u)
    pairs = []  # (working edge, comp_a, comp_b)
    for ci, comp in enumerate(components):
        for w in comp:
            if W_oid[w] >= 0:
                continue
            if first_comp[w] < 0:
                first_comp[w] = ci
            else:
                pairs.append((w, first_comp[w], ci))
    parent = list(range(nc))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w, a, b in pairs:
        if kinds[a] == kinds[b] and kinds[a] != "R":
            ra, rb = find(a), find(b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb

    cluster_of = [find(ci) for ci in range(nc)]
    internal = bytearray(len(W_u))
    for w, a, b in pairs:
        if cluster_of[a] == cluster_of[b]:
            internal[w] = 1

    roots = sorted(set(cluster_of))
    node_index = {r: i for i, r in enumerate(roots)}
    n_internal = len(roots)
    kinds_out = [kinds[r] for r in roots]
    skeletons: list[list] = [[] for _ in roots]
    tree_edges: list[tuple] = []
    q_of_edge = [-1] * g.m
    q_records = []  # (u, v, eid, tree edge id)
    internal_tree_edges = []
    virt_first = {}  # working edge -> (node, slot)
    for ci, comp in enumerate(components):
        ni = node_index[cluster_of[ci]]
        skel = skeletons[ni]
        for w in comp:
            oid = W_oid[w]
            if oid >= 0:
                tid = len(tree_edges)
                q = n_internal + len(q_records)
                slot = len(skel)
                skel.append((W_u[w], W_v[w], "v", tid))
                tree_edges.append((ni, slot, q, 1))
                q_records.append((W_u[w], W_v[w], oid, tid))
                q_of_edge[oid] = q
            else:
                if internal[w]:
                    continue
                prev = virt_first.get(w)
                if prev is None:
                    virt_first[w] = (ni, len(skel))
                    skel.append((W_u[w], W_v[w], "v", -1))
                else:
                    na, sa = prev
                    tid = len(tree_edges)
                    slot = len(skel)
                    skel.append((W_u[w], W_v[w], "v", tid))
                    tree_edges.append((na, sa, ni, slot))
                    internal_tree_edges.append(tid)
                    ua, va, _, _ = skeletons[na][sa]
                    skeletons[na][sa] = (ua, va, "v", tid)
    n_int = len(kinds_out)
    kinds_out.extend("Q" for _ in q_records)
    q_real_edge = [-1] * n_int + [oid for _, _, oid, _ in q_records]
    return SpqrTree(
        g.n, g.m, kinds_out, _LazySkeletons(skeletons, q_records),
        tree_edges, q_of_edge, q_real_edge, n_int, internal_tree_edges,
    )


@dataclass
class RootedSpqrView:
    """The Q-to-Q tree path with every off-path subtree oriented toward it.

    ``path`` lists the nodes from Q(e1) to Q(e2); ``interface[i]`` gives
    the (left, right) skeleton slots of the interface edges of path node i.
    For every off-path S/P/R node, ``parent_edge`` holds its parent tree
    edge and ``poles`` the endpoints of its parent virtual edge;
    ``children`` lists (tree_edge, child) pairs away from the path for
    internal children (Q-leaves are reached through skeleton pairing).
    ``order`` is a BFS order outward from the path (reverse it for
    bottom-up work).
    """

    tree: SpqrTree
    path: list[int]
    interface: list[tuple]
    parent: dict = field(default_factory=dict)
    parent_edge: dict = field(default_factory=dict)
    poles: dict = field(default_factory=dict)
    children: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    def child_slot(self, node):
        """Slot of the parent virtual edge inside the child's skeleton."""
        t = self.parent_edge[node]
        na, sa, nb, sb = self.tree.tree_edges[t]
        return sa if na == node else sb


def root_at_path(tree: SpqrTree, q1: int, q2: int) -> RootedSpqrView:
    """Root the tree at the unique path between two Q-nodes."""
    for q in (q1, q2):
        if not 0 <= q < tree.node_count or tree.kinds[q] != "Q":
            raise NotQNode("node {} is not a Q-node".format(q))
    if q1 == q2:
        raise NotQNode("the two Q-nodes must differ")
    ni = tree.internal_count
    internal_adj: list[list] = [[] for _ in range(ni)]
    for t in tree.internal_tree_edges:
        na, _, nb, _ = tree.tree_edges[t]
        internal_adj[na].append((t, nb))
        internal_adj[nb].append((t, na))
    # attach points: the internal neighbor behind each target Q-node
    def q_link(q):
        tid = tree.skeletons[q][1][3]
        na, sa, nb, sb = tree.tree_edges[tid]
        return (nb, tid) if na == q else (na, tid)

    a1, t1 = q_link(q1)
    a2, t2 = q_link(q2)
    prev = {a1: (q1, t1)}
    queue = [a1]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        if x == a2:
            break
        for t, nb in internal_adj[x]:
            if nb not in prev:
                prev[nb] = (x, t)
                queue.append(nb)
    if a2 not in prev:
        raise AssertionError("SPQR tree is not connected")
    path = [q2]
    x = a2
    while x != q1:
        path.append(x)
        x = prev[x][0]
    path.append(q1)
    path.reverse()
    view = RootedSpqrView(tree=tree, path=path, interface=[])
    # tree edges along the path: q1-a1, the BFS predecessor links, a2-q2
    link = [t1]
    for i in range(2, len(path) - 1):
        link.append(prev[path[i]][1])
    link.append(t2)
    for i, node in enumerate(path):
        left = right = None
        if i > 0:
            t = link[i - 1]
            na, sa, nb, sb = tree.tree_edges[t]
            left = sa if na == node else sb
        if i + 1 < len(path):
            t = link[i]
            na, sa, nb, sb = tree.tree_edges[t]
            right = sa if na == node else sb
        if i == 0:
            left = next(
                s for s, entry in enumerate(tree.skeletons[node]) if entry[2] == "r"
            )
        if i == len(path) - 1:
            right = next(
                s for s, entry in enumerate(tree.skeletons[node]) if entry[2] == "r"
            )
        view.interface.append((left, right))
    queue = [x for x in path if x < ni]
    seen = set(path)
    tree_edges = tree.tree_edges
    skeletons = tree.skeletons
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        kids = []
        for t, nb in internal_adj[x]:
            if nb in seen:
                continue
            seen.add(nb)
            kids.append((t, nb))
            view.parent[nb] = x
            view.parent_edge[nb] = t
            na, sa, nb2, sb = tree_edges[t]
            slot = sa if na == nb else sb
            u, v, _, _ = skeletons[nb][slot]
            view.poles[nb] = (u, v)
            queue.append(nb)
            view.order.append(nb)
        view.children[x] = kids
    return view


def _joining_tree_edge(tree, a, b):
    probe = a if tree.kinds[a] == "Q" else (b if tree.kinds[b] == "Q" else None)
    if probe is not None:
        tid = tree.skeletons[probe][1][3]
        na, _, nb, _ = tree.tree_edges[tid]
        if {na, nb} == {a, b}:
            return tid
        raise AssertionError("nodes {} and {} are not adjacent".format(a, b))
    for t, nb in tree.adjacency[a]:
        if nb == b:
            return t
    raise AssertionError("nodes {} and {} are not adjacent".format(a, b))


def expand_to_edges(tree: SpqrTree) -> list[int]:
    """All original edge ids, one per Q-node (identity check helper)."""
    out = []
    for i, kind in enumerate(tree.kinds):
        if kind == "Q":
            for u, v, k, ref in tree.skeletons[i]:
                if k == "r":
                    out.append(ref)
    return sorted(out)
