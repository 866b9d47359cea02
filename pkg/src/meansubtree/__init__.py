"""Exact computation, search and verification for the mean subtree order of trees."""

from .counting import (
    SubtreeAggregate,
    brute_force_counts,
    central_part,
    defect,
    density,
    global_counts,
    local_mean,
    mean_subtree_order,
    per_vertex_counts,
    rooted_counts,
    set_mean,
    subtree_core,
)
from .trees import (
    Broom,
    Caterpillar,
    DoubleBroom,
    Path,
    Star,
    Tree,
    TreeError,
    UnbalancedDoubleBroom,
    build_family,
    canonical_form,
    centroid,
    diameter,
    generate_free_trees,
    parse_tree,
)

__version__ = "0.1.0"

__all__ = [
    "SubtreeAggregate",
    "brute_force_counts",
    "central_part",
    "defect",
    "density",
    "global_counts",
    "local_mean",
    "mean_subtree_order",
    "per_vertex_counts",
    "rooted_counts",
    "set_mean",
    "subtree_core",
    "Broom",
    "Caterpillar",
    "DoubleBroom",
    "Path",
    "Star",
    "Tree",
    "TreeError",
    "UnbalancedDoubleBroom",
    "build_family",
    "canonical_form",
    "centroid",
    "diameter",
    "generate_free_trees",
    "parse_tree",
]
