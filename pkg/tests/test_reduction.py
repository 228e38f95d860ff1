import random

from cyclelabels.graph import LabeledMultigraph, walk_label
from cyclelabels.oracle import enumerate_path_labels
from cyclelabels.reduction import (
    build_local_instances,
    recombine,
    solve_local,
    summarize_all,
    summarize_subtree,
    _expand_edges,
)
from cyclelabels.spqr import build_spqr, root_at_path

from util import random_biconnected


def pipeline(g, e1, e2):
    tree = build_spqr(g)
    view = root_at_path(tree, tree.q_of_edge[e1], tree.q_of_edge[e2])
    summaries = summarize_all(view, g)
    instances = build_local_instances(view, summaries, g)
    outcomes = [solve_local(inst) for inst in instances]
    return tree, view, summaries, instances, outcomes


def test_leaf_q_node_summary_carries_edge_label():
    # triangle plus a pendant parallel path: the off-path Q child of the
    # series node summarizes to its own edge label
    g = LabeledMultigraph(3, 2, [(0, 1, 2), (1, 2, 1), (2, 0, 3)])
    tree = build_spqr(g)
    view = root_at_path(tree, tree.q_of_edge[0], tree.q_of_edge[1])
    series = view.path[1]
    l_slot, r_slot = view.interface[1]
    q_child = next(
        tree.pair_slot(series, slot)[0]
        for slot in range(len(tree.skeletons[series]))
        if slot not in (l_slot, r_slot)
    )
    assert tree.kinds[q_child] == "Q"
    view.poles[q_child] = tuple(tree.skeletons[q_child][0][:2])
    summary = summarize_subtree(view, q_child, {}, g)
    assert summary.labels == (3,)
    assert summary.backrefs == [("edge", 2)]


def test_p_node_child_summary_two_labels():
    # two vertices joined by two parallels (0 and 1) in series with
    # target edges: the parallel bundle summarizes to both labels
    g = LabeledMultigraph(
        3, 1, [(0, 1, 0), (0, 1, 1), (1, 2, 0), (2, 0, 0)]
    )
    tree = build_spqr(g)
    view = root_at_path(tree, tree.q_of_edge[2], tree.q_of_edge[3])
    summaries = summarize_all(view, g)
    p_node = next(
        node for node in view.order if tree.kinds[node] == "P"
    )
    assert summaries[p_node].labels == (0, 1)


def test_series_instance_offers_choice_per_position():
    g = LabeledMultigraph(
        3, 1, [(0, 1, 0), (0, 1, 1), (1, 2, 0), (2, 0, 0)]
    )
    tree, view, summaries, instances, outcomes = pipeline(g, 2, 3)
    out = recombine(view, instances, outcomes, summaries, g, 2, 3)
    assert out.labels == (0, 1)
    for lab, wit in zip(out.labels, out.witnesses):
        assert walk_label(g, wit) == lab
        assert {2, 3} <= set(wit.edge_ids())


def test_summary_paths_expand_to_valid_original_paths():
    rng = random.Random(515)
    for _ in range(80):
        n = rng.randrange(4, 9)
        g = random_biconnected(rng, n, rng.randrange(n + 1, 2 * n + 3), 2)
        e1, e2 = rng.sample(range(g.m), 2)
        if set(g.endpoints(e1)) & set(g.endpoints(e2)):
            continue
        tree, view, summaries, instances, outcomes = pipeline(g, e1, e2)
        for node, summary in summaries.items():
            a, b = summary.poles
            want = enumerate_path_labels(_pertinent_subgraph(g, tree, view, node), a, b)
            assert len(summary.labels) == min(len(want), 2)
            assert set(summary.labels) <= set(want.labels)
            for lab, path in zip(summary.labels, summary.paths):
                edges = _expand_edges(path, summary.backrefs, summaries)
                # expanded edges form a simple a-b path in the original graph
                assert len(edges) == len(set(edges))
                deg = {}
                for e in edges:
                    for v in g.endpoints(e):
                        deg[v] = deg.get(v, 0) + 1
                odd = sorted(v for v, d in deg.items() if d % 2 == 1)
                assert odd == sorted((a, b))
                lbl = 0
                for e in edges:
                    lbl ^= g.edge_label[e]
                assert lbl == lab


def _pertinent_subgraph(g, tree, view, node):
    """Subtree's original edges as a graph over the original vertex ids."""
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
    edges = [
        (g.edge_u[e], g.edge_v[e], g.edge_label[e]) for e in sorted(sub)
    ]
    return LabeledMultigraph(g.n, g.k, edges)


def test_local_instance_interfaces_are_zero_labeled():
    rng = random.Random(525)
    for _ in range(60):
        n = rng.randrange(4, 9)
        g = random_biconnected(rng, n, rng.randrange(n + 1, 2 * n + 2), 2)
        e1, e2 = rng.sample(range(g.m), 2)
        if set(g.endpoints(e1)) & set(g.endpoints(e2)):
            continue
        tree, view, summaries, instances, outcomes = pipeline(g, e1, e2)
        for inst in instances:
            assert inst.h.edge_label[inst.left] == 0
            assert inst.h.edge_label[inst.right] == 0
        # Q and P path nodes always produce the singleton zero label
        for inst, (loc, _) in zip(instances, outcomes):
            if inst.kind in ("Q", "P"):
                assert len(loc) == 1 and loc[0][0] == 0
