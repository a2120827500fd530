"""
Simon factorization trees: construction, range extraction, splicing, verification.
"""
from .builder import SimonTreeBuilder, build_simon_tree
from .extract import subtree_for_range
from .splice import normalize_labels, splice_training
from .tree import (
    Node, TreeStats, count_nodes, iter_leaves, iter_preorder, leaf, leaf_labels,
    make_node, tree_height_bound,
)
from .verify import VerificationReport, verify_tree

__all__ = [
    "SimonTreeBuilder", "build_simon_tree", "subtree_for_range", "normalize_labels",
    "splice_training", "Node", "TreeStats", "count_nodes", "iter_leaves", "iter_preorder",
    "leaf", "leaf_labels", "make_node", "tree_height_bound", "VerificationReport", "verify_tree",
]
