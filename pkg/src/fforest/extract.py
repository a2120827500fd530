"""
Range extraction from a factorization tree.
"""
from bisect import bisect_left, bisect_right
from typing import List, Optional

from src.errors import RangeOutOfBounds
from src.fforest.tree import Node, TreeStats, make_node
from src.monoid.base import FiniteMonoid


def subtree_for_range(
    tree: Node,
    i: int,
    j: int,
    monoid: FiniteMonoid,
    stats: Optional[TreeStats] = None,
) -> Node:
    """
    Factorization tree of the leaves with positions in [i..j].

    Fully covered subtrees are shared by reference; only nodes on the two
    boundary paths are rebuilt, so the result has height at most
    height(tree) + 2 and costs O(height) products.

    Raises:
        RangeOutOfBounds: i > j or the range leaves the tree's span
    """
    if i > j or i < tree.first or j > tree.last:
        raise RangeOutOfBounds(i, j, tree.last)
    stats = stats if stats is not None else TreeStats()
    result = _extract(tree, i, j, monoid, stats)
    if result is None:
        raise RangeOutOfBounds(i, j, tree.last)
    return result


def _extract(node: Node, i: int, j: int, monoid: FiniteMonoid, stats: TreeStats) -> Optional[Node]:
    stats.nodes_touched += 1
    if i <= node.first and node.last <= j:
        return node
    if node.children is None:
        return None
    children = node.children
    lo = bisect_left(children, i, key=lambda child: child.last)
    hi = bisect_right(children, j, key=lambda child: child.first) - 1
    if lo > hi:
        return None
    if lo == hi:
        return _extract(children[lo], i, j, monoid, stats)

    left = _extract(children[lo], i, j, monoid, stats)
    right = _extract(children[hi], i, j, monoid, stats)
    middle = list(children[lo + 1:hi])
    # Full boundary children join the run of shared middle children.
    if left is children[lo]:
        middle.insert(0, left)
        left = None
    if right is children[hi]:
        middle.append(right)
        right = None

    parts: List[Node] = []
    if left is not None:
        parts.append(left)
    if middle:
        parts.append(make_node(middle, monoid, stats))
    if right is not None:
        parts.append(right)
    if not parts:
        return None
    result = parts[0]
    for part in parts[1:]:
        result = make_node([result, part], monoid, stats)
    return result
