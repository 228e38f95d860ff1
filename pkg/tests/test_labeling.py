import random

import pytest

from cyclelabels.errors import NoPath, NotSpanningTree, SameVertex
from cyclelabels.graph import LabeledMultigraph, walk_label
from cyclelabels.labeling import (
    find_nonzero_cycle_len3,
    is_balanced,
    normalize_on_tree,
    two_labels_st,
)
from cyclelabels.oracle import enumerate_cycle_labels, enumerate_path_labels

from util import (
    assert_valid_cycle,
    assert_valid_path,
    graph_with_shifts,
    random_biconnected,
    random_multigraph,
)


def test_normalize_identity_on_all_zero():
    g = LabeledMultigraph(3, 1, [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    h, assign = normalize_on_tree(g, {0, 1})
    assert assign.shifts == (0, 0, 0)
    assert h.edge_label == [0, 0, 0]


def test_normalize_triangle_preserves_cycle_label():
    g = LabeledMultigraph(3, 1, [(0, 1, 1), (1, 2, 1), (2, 0, 0)])
    h, _ = normalize_on_tree(g, {0, 1})
    assert h.edge_label[0] == 0 and h.edge_label[1] == 0
    # the non-tree edge now carries the whole triangle label
    assert h.edge_label[2] == 1 ^ 1 ^ 0


def test_normalize_rejects_non_spanning_sets():
    g = LabeledMultigraph(3, 1, [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    with pytest.raises(NotSpanningTree):
        normalize_on_tree(g, {0})
    with pytest.raises(NotSpanningTree):
        normalize_on_tree(g, {0, 0})


def test_normalize_random_graphs_preserve_fundamental_cycle_labels():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randrange(2, 8)
        g = random_multigraph(rng, n, rng.randrange(n, 2 * n + 3), 2)
        # build any spanning tree
        seen = {0}
        tree = set()
        stack = [0]
        while stack:
            v = stack.pop()
            for e in g.adj[v]:
                o = g.other_end(e, v)
                if o not in seen:
                    seen.add(o)
                    tree.add(e)
                    stack.append(o)
        h, _ = normalize_on_tree(g, tree)
        before = enumerate_cycle_labels(g)
        after = enumerate_cycle_labels(h)
        assert before.labels == after.labels
        for e in tree:
            assert h.edge_label[e] == 0


def test_is_balanced_trivial_and_parallel():
    g = LabeledMultigraph(3, 1, [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    assert is_balanced(g) is True
    g2 = LabeledMultigraph(2, 1, [(0, 1, 0), (0, 1, 1)])
    witness = is_balanced(g2)
    assert witness is not True
    assert_valid_cycle(g2, witness)
    assert walk_label(g2, witness) != 0


def test_is_balanced_shifted_graphs_stay_balanced():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randrange(2, 8)
        g = random_multigraph(rng, n, rng.randrange(n - 1, 2 * n + 2), 3)
        zero = LabeledMultigraph(g.n, g.k, [(u, v, 0) for u, v, _ in g.edge_tuples()])
        shifted = graph_with_shifts(rng, zero)
        assert is_balanced(shifted) is True


def test_is_balanced_matches_bruteforce_small():
    rng = random.Random(13)
    for _ in range(150):
        n = rng.randrange(2, 7)
        g = random_multigraph(rng, n, rng.randrange(n, 2 * n + 3), 2, connected=False)
        brute = all(l == 0 for l in enumerate_cycle_labels(g).labels)
        mine = is_balanced(g)
        if brute:
            assert mine is True
        else:
            assert mine is not True
            assert walk_label(g, mine) != 0


def test_find_nonzero_len3_triangle():
    g = LabeledMultigraph(3, 1, [(0, 1, 1), (1, 2, 0), (2, 0, 0)])
    c = find_nonzero_cycle_len3(g)
    assert c is not None and len(c) == 3
    assert walk_label(g, c) == 1


def test_find_nonzero_len3_own_block_parallel_pair_gives_none():
    # non-zero 2-cycle forming its own block, rest balanced
    g = LabeledMultigraph(
        4, 1, [(0, 1, 0), (0, 1, 1), (1, 2, 0), (2, 3, 0), (3, 1, 0)]
    )
    assert find_nonzero_cycle_len3(g) is None


def test_find_nonzero_len3_extends_parallel_pair_inside_bigger_block():
    # parallel pair with distinct labels inside a triangle block
    g = LabeledMultigraph(3, 1, [(0, 1, 0), (0, 1, 1), (1, 2, 0), (2, 0, 0)])
    c = find_nonzero_cycle_len3(g)
    assert c is not None and len(c) >= 3
    assert walk_label(g, c) != 0


def test_find_nonzero_len3_matches_bruteforce():
    rng = random.Random(21)
    for _ in range(300):
        n = rng.randrange(2, 8)
        g = random_multigraph(rng, n, rng.randrange(n, 2 * n + 4), 1, connected=False)
        brute = any(
            l != 0 for l in enumerate_cycle_labels(g, min_len=3).witnesses
        )
        mine = find_nonzero_cycle_len3(g)
        assert (mine is not None) == brute
        if mine is not None:
            assert len(mine) >= 3
            assert walk_label(g, mine) != 0


def test_two_labels_single_edge():
    g = LabeledMultigraph(2, 2, [(0, 1, 2)])
    res = two_labels_st(g, 0, 1)
    assert res.labels == (2,)
    assert_valid_path(g, res.witnesses[0], 0, 1, label=2)


def test_two_labels_parallel_edges():
    g = LabeledMultigraph(2, 1, [(0, 1, 0), (0, 1, 1)])
    res = two_labels_st(g, 0, 1)
    assert res.labels == (0, 1)
    for lab, wit in zip(res.labels, res.witnesses):
        assert_valid_path(g, wit, 0, 1, label=lab)


def test_two_labels_rejects_degenerate():
    g = LabeledMultigraph(3, 1, [(0, 1, 0)])
    with pytest.raises(SameVertex):
        two_labels_st(g, 1, 1)
    with pytest.raises(NoPath):
        two_labels_st(g, 0, 2)


def test_two_labels_matches_bruteforce_random():
    rng = random.Random(31)
    for _ in range(250):
        n = rng.randrange(2, 8)
        k = rng.randrange(1, 3)
        g = random_multigraph(rng, n, rng.randrange(n - 1, 2 * n + 3), k, connected=False)
        s = rng.randrange(n)
        t = rng.randrange(n)
        if s == t:
            continue
        brute = enumerate_path_labels(g, s, t)
        if len(brute) == 0:
            with pytest.raises(NoPath):
                two_labels_st(g, s, t)
            continue
        res = two_labels_st(g, s, t)
        assert len(res.labels) == min(len(brute), 2)
        assert set(res.labels) <= set(brute.labels)
        assert list(res.labels) == sorted(res.labels)
        for lab, wit in zip(res.labels, res.witnesses):
            assert_valid_path(g, wit, s, t, label=lab)


def test_two_labels_matches_bruteforce_biconnected():
    rng = random.Random(37)
    for _ in range(150):
        n = rng.randrange(3, 8)
        m = rng.randrange(n, 2 * n + 2)
        g = random_biconnected(rng, n, m, rng.randrange(1, 3))
        s, t = rng.sample(range(n), 2)
        brute = enumerate_path_labels(g, s, t)
        res = two_labels_st(g, s, t)
        assert len(res.labels) == min(len(brute), 2)
        assert set(res.labels) <= set(brute.labels)
