import itertools
import random

import pytest

from cyclelabels.connectivity import connected_component
from cyclelabels.errors import NotBiconnected, TooSmall
from cyclelabels.graph import LabeledMultigraph
from cyclelabels.oracle import reference_spqr, spqr_certificate
from cyclelabels.spqr import build_spqr, expand_to_edges, root_at_path

from util import random_biconnected


def is_biconnected(g):
    from cyclelabels.connectivity import block_cut_tree
    from cyclelabels.errors import Disconnected

    try:
        return len(block_cut_tree(g).blocks) == 1
    except Disconnected:
        return False


def all_biconnected_simple(n):
    """All biconnected simple graphs on labeled vertices 0..n-1."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        edges = [(u, v, 0) for i, (u, v) in enumerate(pairs) if mask >> i & 1]
        if len(edges) < n:
            continue
        g = LabeledMultigraph(n, 1, edges)
        if is_biconnected(g):
            out.append(g)
    return out


def check_tree_structure(g, tree):
    # every original edge appears as the real edge of exactly one Q-node
    assert expand_to_edges(tree) == list(range(g.m))
    reals = sum(
        1
        for skel in tree.skeletons
        for _, _, kind, _ in skel
        if kind == "r"
    )
    assert reals == g.m
    # paired virtual edges share endpoints
    for na, sa, nb, sb in tree.tree_edges:
        ua, va = tree.skeletons[na][sa][:2]
        ub, vb = tree.skeletons[nb][sb][:2]
        assert {ua, va} == {ub, vb}
    # node kind shapes
    for i, kind in enumerate(tree.kinds):
        skel = tree.skeletons[i]
        verts = tree.skeleton_vertices(i)
        if kind == "Q":
            assert len(skel) == 2
        elif kind == "P":
            assert len(verts) == 2 and len(skel) >= 3
        elif kind == "S":
            assert len(skel) == len(verts) >= 3
            deg = {}
            for u, v, _, _ in skel:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            assert all(d == 2 for d in deg.values())
        else:
            assert len(verts) >= 4
    # no two adjacent S nodes, no two adjacent P nodes
    for na, _, nb, _ in tree.tree_edges:
        ka, kb = tree.kinds[na], tree.kinds[nb]
        assert not (ka == kb == "S") and not (ka == kb == "P")
    # the tree is a tree
    assert len(tree.tree_edges) == tree.node_count - 1


def check_split_pairs(g, tree):
    """Removing the two pole vertices of any tree edge separates the sides."""
    for t, (na, sa, nb, sb) in enumerate(tree.tree_edges):
        u, v = tree.skeletons[na][sa][:2]
        # collect original edges on nb's side of the tree edge
        side = set()
        stack = [nb]
        seen = {na, nb}
        side_nodes = [nb]
        while stack:
            x = stack.pop()
            for t2, nb2 in tree.adjacency[x]:
                if t2 == t or nb2 in seen:
                    continue
                seen.add(nb2)
                side_nodes.append(nb2)
                stack.append(nb2)
        for x in side_nodes:
            if tree.kinds[x] == "Q":
                for uu, vv, kind, ref in tree.skeletons[x]:
                    if kind == "r":
                        side.add(ref)
        other = set(range(g.m)) - side
        # strip edges touching the poles
        side_v = {
            x
            for e in side
            for x in (g.edge_u[e], g.edge_v[e])
            if x not in (u, v)
        }
        other_v = {
            x
            for e in other
            for x in (g.edge_u[e], g.edge_v[e])
            if x not in (u, v)
        }
        assert not (side_v & other_v), "split pair {} fails for tree edge {}".format((u, v), t)


def test_cycle_gives_single_s_node():
    g = LabeledMultigraph(5, 1, [(i, (i + 1) % 5, 0) for i in range(5)])
    tree = build_spqr(g)
    kinds = sorted(tree.kinds)
    assert kinds == ["Q"] * 5 + ["S"]
    check_tree_structure(g, tree)


def test_triple_parallel_gives_single_p_node():
    g = LabeledMultigraph(2, 1, [(0, 1, 0)] * 3)
    tree = build_spqr(g)
    assert sorted(tree.kinds) == ["P", "Q", "Q", "Q"]
    check_tree_structure(g, tree)


def test_k4_gives_single_r_node():
    g = LabeledMultigraph(4, 1, [(0, 1, 0), (0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 0), (2, 3, 0)])
    tree = build_spqr(g)
    assert sorted(tree.kinds) == ["Q"] * 6 + ["R"]
    check_tree_structure(g, tree)


def test_too_small_and_not_biconnected():
    with pytest.raises(TooSmall):
        build_spqr(LabeledMultigraph(2, 1, [(0, 1, 0), (0, 1, 0)]))
    with pytest.raises(NotBiconnected):
        build_spqr(
            LabeledMultigraph(5, 1, [(0, 1, 0), (1, 2, 0), (2, 0, 0), (2, 3, 0), (3, 4, 0), (4, 2, 0)])
        )


def test_exhaustive_small_simple_graphs_match_reference():
    for n in (3, 4, 5):
        for g in all_biconnected_simple(n):
            mine = build_spqr(g)
            ref = reference_spqr(g)
            check_tree_structure(g, mine)
            assert spqr_certificate(mine) == spqr_certificate(ref), (
                "mismatch on n={} edges={} mine={} ref={}".format(
                    n,
                    list(g.edge_tuples()),
                    list(zip(mine.kinds, mine.skeletons)),
                    list(zip(ref.kinds, ref.skeletons)),
                )
            )


def test_random_multigraphs_match_reference():
    rng = random.Random(101)
    for trial in range(400):
        n = rng.randrange(3, 9)
        m = rng.randrange(n, 2 * n + 4)
        g = random_biconnected(rng, n, m, 1)
        mine = build_spqr(g)
        ref = reference_spqr(g)
        check_tree_structure(g, mine)
        check_split_pairs(g, mine)
        assert spqr_certificate(mine) == spqr_certificate(ref), (
            "mismatch on trial {} edges={}".format(trial, list(g.edge_tuples()))
        )


def test_larger_random_graphs_match_reference():
    rng = random.Random(202)
    for trial in range(40):
        n = rng.randrange(10, 30)
        m = rng.randrange(n + 2, 2 * n + 8)
        g = random_biconnected(rng, n, m, 2)
        mine = build_spqr(g)
        ref = reference_spqr(g)
        check_tree_structure(g, mine)
        assert spqr_certificate(mine) == spqr_certificate(ref)


def test_skeleton_size_linear():
    rng = random.Random(303)
    for _ in range(20):
        n = rng.randrange(8, 40)
        m = rng.randrange(n + 2, 3 * n)
        g = random_biconnected(rng, n, m, 1)
        tree = build_spqr(g)
        assert tree.skeleton_size_sum() <= 6 * (g.n + g.m)


def test_root_at_path_cycle():
    g = LabeledMultigraph(4, 1, [(0, 1, 0), (1, 2, 0), (2, 3, 0), (3, 0, 0)])
    tree = build_spqr(g)
    view = root_at_path(tree, tree.q_of_edge[0], tree.q_of_edge[2])
    assert len(view.path) == 3
    assert tree.kinds[view.path[0]] == "Q"
    assert tree.kinds[view.path[1]] == "S"
    assert tree.kinds[view.path[2]] == "Q"
    l0, r0 = view.interface[0]
    assert tree.skeletons[view.path[0]][l0][2] == "r"


def test_root_at_path_poles_cut_off_subtrees():
    rng = random.Random(404)
    for _ in range(60):
        n = rng.randrange(4, 9)
        g = random_biconnected(rng, n, rng.randrange(n + 1, 2 * n + 3), 1)
        tree = build_spqr(g)
        e1, e2 = rng.sample(range(g.m), 2)
        view = root_at_path(tree, tree.q_of_edge[e1], tree.q_of_edge[e2])
        for node in view.order:
            a, b = view.poles[node]
            # pertinent edges of the subtree, walked through skeleton pairing
            sub = set()
            stack = [node]
            while stack:
                x = stack.pop()
                parent_t = view.parent_edge.get(x)
                for slot, (u, v, kind, ref) in enumerate(tree.skeletons[x]):
                    if kind != "v" or ref == parent_t:
                        continue
                    child, _ = tree.pair_slot(x, slot)
                    if tree.kinds[child] == "Q":
                        sub.add(tree.q_real_edge[child])
                    else:
                        stack.append(child)
            if not sub:
                continue
            inner = {
                x
                for e in sub
                for x in (g.edge_u[e], g.edge_v[e])
                if x not in (a, b)
            }
            outer = {
                x
                for e in set(range(g.m)) - sub
                for x in (g.edge_u[e], g.edge_v[e])
                if x not in (a, b)
            }
            assert not (inner & outer)
