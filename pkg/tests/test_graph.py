import random

import pytest
from hypothesis import given, strategies as st

from cyclelabels.errors import InvalidWalk, NotACycle, TargetNotOnPath
from cyclelabels.graph import (
    LabeledMultigraph,
    Walk,
    canonicalize_cycle,
    first_hit_prefix,
    label_bits,
    walk_from_edges,
    walk_label,
)

from util import random_multigraph


def triangle(labels=(1, 0, 0)):
    return LabeledMultigraph(3, 1, [(0, 1, labels[0]), (1, 2, labels[1]), (2, 0, labels[2])])


def test_rejects_self_loops_and_bad_labels():
    with pytest.raises(ValueError):
        LabeledMultigraph(2, 1, [(0, 0, 0)])
    with pytest.raises(ValueError):
        LabeledMultigraph(2, 1, [(0, 1, 2)])
    with pytest.raises(ValueError):
        LabeledMultigraph(2, 1, [(0, 3, 0)])


def test_adjacency_sorted_by_edge_id():
    g = LabeledMultigraph(3, 2, [(1, 2, 0), (0, 1, 1), (0, 2, 2), (0, 1, 3)])
    assert g.adj[0] == [1, 2, 3]
    assert g.adj[1] == [0, 1, 3]


def test_label_bits():
    assert label_bits(5, 4) == "0101"
    assert label_bits(0, 3) == "000"


def test_walk_label_empty_walk_is_zero():
    g = triangle()
    assert walk_label(g, Walk(1)) == 0


def test_walk_label_double_traversal_cancels():
    g = LabeledMultigraph(2, 3, [(0, 1, 0b101)])
    w = Walk(0, ((0, 1), (0, 0)))
    assert walk_label(g, w) == 0


def test_walk_label_triangle():
    g = triangle((1, 0, 0))
    assert walk_label(g, walk_from_edges(g, 0, [0, 1, 2])) == 1


def test_walk_label_rejects_broken_incidence():
    g = triangle()
    with pytest.raises(InvalidWalk):
        walk_label(g, Walk(0, ((1, 1),)))  # edge 1 joins 1 and 2
    with pytest.raises(InvalidWalk):
        walk_label(g, Walk(0, ((7, 1),)))


def test_canonicalize_rotates_to_min_vertex():
    g = triangle()
    c = walk_from_edges(g, 2, [2, 0, 1])  # 2 -> 0 -> 1 -> 2
    canon = canonicalize_cycle(g, c)
    assert canon.start == 0
    assert canon.vertices()[-1] == 0
    assert walk_label(g, canon) == walk_label(g, c)


def test_canonicalize_direction_tiebreak_on_parallel_pair():
    g = LabeledMultigraph(2, 1, [(0, 1, 0), (0, 1, 1)])
    c = walk_from_edges(g, 1, [1, 0])
    canon = canonicalize_cycle(g, c)
    assert canon.start == 0
    assert canon.steps[0][0] == 0


def test_canonicalize_idempotent_on_random_cycles():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(3, 8)
        g = LabeledMultigraph(
            n, 2, [(i, (i + 1) % n, rng.randrange(4)) for i in range(n)]
        )
        start = rng.randrange(n)
        c = walk_from_edges(g, start, [(start + i) % n for i in range(n)])
        once = canonicalize_cycle(g, c)
        assert canonicalize_cycle(g, once) == once


def test_canonicalize_requires_cycle():
    g = triangle()
    with pytest.raises(NotACycle):
        canonicalize_cycle(g, walk_from_edges(g, 0, [0]))


def test_first_hit_prefix_basic():
    g = LabeledMultigraph(4, 1, [(0, 1, 0), (1, 2, 0), (2, 3, 0)])
    q = walk_from_edges(g, 0, [0, 1, 2])
    pref = first_hit_prefix(g, q, {2, 3})
    assert pref.vertices() == [0, 1, 2]


def test_first_hit_prefix_start_in_targets():
    g = LabeledMultigraph(2, 1, [(0, 1, 0)])
    q = walk_from_edges(g, 0, [0])
    assert first_hit_prefix(g, q, {0}) == Walk(0)


def test_first_hit_prefix_missing_target():
    g = LabeledMultigraph(2, 1, [(0, 1, 0)])
    with pytest.raises(TargetNotOnPath):
        first_hit_prefix(g, walk_from_edges(g, 0, [0]), {5})


def test_first_hit_prefix_meets_targets_once_randomized():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randrange(2, 9)
        g = random_multigraph(rng, n, rng.randrange(n, 2 * n + 2), 1)
        # random simple path by DFS
        start = rng.randrange(n)
        path = [start]
        steps = []
        cur = start
        while True:
            options = [
                e for e in g.adj[cur] if g.other_end(e, cur) not in path
            ]
            if not options or rng.random() < 0.3:
                break
            e = rng.choice(options)
            cur = g.other_end(e, cur)
            path.append(cur)
            steps.append((e, cur))
        q = Walk(start, tuple(steps))
        targets = {rng.randrange(n) for _ in range(rng.randrange(1, 4))}
        if not targets & set(path):
            continue
        pref = first_hit_prefix(g, q, targets)
        hits = [v for v in pref.vertices() if v in targets]
        assert len(hits) == 1 and pref.end in targets
        assert pref.steps == q.steps[: len(pref.steps)]


@given(
    st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 7)), max_size=14)
)
def test_walk_label_concat_is_xor(raw_edges):
    edges = [(u, v, l) for u, v, l in raw_edges if u != v]
    g = LabeledMultigraph(6, 3, edges)
    if not edges:
        return
    rng = random.Random(3)
    # random walk split in two at an arbitrary point
    v = g.edge_u[0]
    steps = []
    cur = v
    for _ in range(6):
        if not g.adj[cur]:
            break
        e = rng.choice(g.adj[cur])
        cur = g.other_end(e, cur)
        steps.append((e, cur))
    w = Walk(v, tuple(steps))
    cut = len(steps) // 2
    w1 = Walk(v, tuple(steps[:cut]))
    w2 = Walk(w1.end, tuple(steps[cut:]))
    assert walk_label(g, w) == walk_label(g, w1) ^ walk_label(g, w2)


def test_closed_walk_even_traversals_zero_label():
    g = LabeledMultigraph(3, 2, [(0, 1, 3), (1, 2, 1), (2, 0, 2)])
    w = walk_from_edges(g, 0, [0, 1, 2, 0, 1, 2])  # each edge twice
    assert walk_label(g, w) == 0


def test_path_pair_validation_and_pairing_names():
    from cyclelabels.graph import (
        PAIR_CROSS_A,
        PAIR_CROSS_B,
        PAIR_STRAIGHT,
        make_path_pair,
    )

    g = LabeledMultigraph(
        6, 1,
        [(0, 1, 1), (2, 3, 0), (0, 2, 0), (1, 3, 0), (0, 3, 0), (1, 2, 0)],
    )
    # x1=0, y1=1, x2=2, y2=3
    p1 = walk_from_edges(g, 0, [0])   # 0-1
    p2 = walk_from_edges(g, 2, [1])   # 2-3
    pair = make_path_pair(g, p1, p2, 0, 1, 2, 3)
    assert pair.pairing == PAIR_STRAIGHT
    assert pair.label(g) == 1
    pair = make_path_pair(g, walk_from_edges(g, 0, [2]), walk_from_edges(g, 1, [3]), 0, 1, 2, 3)
    assert pair.pairing == PAIR_CROSS_A
    pair = make_path_pair(g, walk_from_edges(g, 0, [4]), walk_from_edges(g, 1, [5]), 0, 1, 2, 3)
    assert pair.pairing == PAIR_CROSS_B


def test_path_pair_rejects_intersecting_paths():
    from cyclelabels.graph import make_path_pair

    g = LabeledMultigraph(4, 1, [(0, 1, 0), (1, 2, 0), (1, 3, 0)])
    p1 = walk_from_edges(g, 0, [0])
    p2 = walk_from_edges(g, 1, [1])  # shares vertex 1
    with pytest.raises(InvalidWalk):
        make_path_pair(g, p1, p2, 0, 1, 2, 3)
