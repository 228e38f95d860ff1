"""Cycles through two targets in XOR-labeled multigraphs.

Given a multigraph whose edges carry GF(2)^k labels and two target vertices
or edges, decide in near-linear time whether the cycles through both targets
realize one label or at least two, and produce explicit witness cycles.
Includes the derived applications: odd cycle through two vertices and cycle
through three vertices.
"""

from .graph import (
    LabeledMultigraph,
    PathPair,
    Walk,
    canonicalize_cycle,
    first_hit_prefix,
    label_bits,
    walk_from_edges,
    walk_label,
)
from .labeling import (
    ShiftAssignment,
    TwoLabelsResult,
    find_nonzero_cycle_len3,
    is_balanced,
    normalize_on_tree,
    two_labels_st,
)
from .connectivity import BlockCutTree, FanResult, block_cut_tree, disjoint_paths
from .solver import (
    ParityOutcome,
    cycle_three_vertices,
    odd_cycle_two_vertices,
    solve_two_edges,
    solve_two_vertices,
)
from .triconnected import ConstructionTrace, Outcome

__all__ = [
    "LabeledMultigraph",
    "PathPair",
    "Walk",
    "canonicalize_cycle",
    "first_hit_prefix",
    "label_bits",
    "walk_from_edges",
    "walk_label",
    "ShiftAssignment",
    "TwoLabelsResult",
    "find_nonzero_cycle_len3",
    "is_balanced",
    "normalize_on_tree",
    "two_labels_st",
    "BlockCutTree",
    "FanResult",
    "block_cut_tree",
    "disjoint_paths",
    "ParityOutcome",
    "cycle_three_vertices",
    "odd_cycle_two_vertices",
    "solve_two_edges",
    "solve_two_vertices",
    "ConstructionTrace",
    "Outcome",
]
