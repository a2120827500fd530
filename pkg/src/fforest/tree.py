"""
Factorization tree nodes and instrumentation counters.
"""
from dataclasses import asdict, dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.monoid.base import FiniteMonoid


@dataclass(frozen=True, slots=True)
class Node:
    """
    Node of a factorization tree.

    Leaves have ``children=None`` and carry their position (``first == last``)
    and Γ symbol. Inner nodes are binary or idempotent (three or more
    children sharing one idempotent label). A leaf has height 0.
    """
    label: int
    height: int
    first: int
    last: int
    children: Optional[Tuple["Node", ...]] = None
    symbol: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def is_idempotent_node(self) -> bool:
        return self.children is not None and len(self.children) >= 3

    @property
    def position(self) -> int:
        return self.first


def leaf(label: int, position: int, symbol: Optional[int] = None) -> Node:
    return Node(label, 0, position, position, None, symbol)


def iter_leaves(tree: Node) -> Iterator[Node]:
    """Leaves from left to right."""
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.children is None:
            yield node
        else:
            stack.extend(reversed(node.children))


def iter_preorder(tree: Node) -> Iterator[Node]:
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        if node.children is not None:
            stack.extend(reversed(node.children))


def leaf_labels(tree: Node) -> List[int]:
    return [node.label for node in iter_leaves(tree)]


def count_nodes(tree: Node) -> int:
    return sum(1 for _ in iter_preorder(tree))


def tree_height_bound(monoid: FiniteMonoid) -> int:
    """Simon's bound on the height of a factorization tree over ``monoid``."""
    return 3 * monoid.size


@dataclass
class TreeStats:
    """Work counters for tree construction and queries."""
    nodes_touched: int = 0
    nodes_created: int = 0
    products: int = 0

    def add(self, other: "TreeStats") -> None:
        self.nodes_touched += other.nodes_touched
        self.nodes_created += other.nodes_created
        self.products += other.products

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


def make_node(children: Sequence[Node], monoid: FiniteMonoid, stats: Optional[TreeStats] = None) -> Node:
    """
    Combine consecutive subtrees under one node.

    One child is returned as is; two make a binary node; three or more must
    share an idempotent label and make an idempotent node.
    """
    if len(children) == 1:
        return children[0]
    if not children:
        raise ValueError("a node needs at least one child")
    if len(children) == 2:
        left, right = children
        label = monoid.mul(left.label, right.label)
        if stats is not None:
            stats.products += 1
    else:
        label = children[0].label
        if any(child.label != label for child in children) or not monoid.is_idempotent(label):
            raise ValueError("children of an idempotent node must share one idempotent label")
    if stats is not None:
        stats.nodes_created += 1
    return Node(
        label,
        1 + max(child.height for child in children),
        children[0].first,
        children[-1].last,
        tuple(children),
    )
