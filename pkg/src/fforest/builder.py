"""
Simon factorization trees by recursion on Green's relations.

The whole sequence is cut into blocks whose products fall into the J-class
J0 of the total product; the prefix of each block lies strictly above J0 and
is built recursively. Inside J0 the block sequence is factored three times:
by R-classes (cut before the R-class of the first item), by L-classes (cut
after the L-class of the last item), and finally inside the group H-class by
prefix values, where runs between equal prefix values form idempotent nodes.

Height per J-class, with A the height available to sequences whose product
lies strictly above J0 and blocks of height at most A+1:

* Inside J0 every item sits at depth at most 3·|J0|-1 (each of the r·l
  nested R- and L-levels costs one closing node plus at most 3g-1 group
  levels, the innermost closing node is not needed). The last item sits at
  depth at most 5r-1.
* When the H-classes of J0 have g >= 2 elements the leftover suffix after the
  last block is folded into that block. The last item then has height A+2
  at depth 5r-1 <= 3·|J0|-2, so the tree has height at most A+3·|J0|.
* When g = 1 the group levels cost one each and the leftover suffix takes
  one binary node on top: A+1 + 2·|J0|-1 + 1 <= A+3·|J0|.
* A non-regular J0 holds a single block: at most A+2.

Summing over a descending J-chain gives height at most 3·|M|.
"""
from collections import Counter
from typing import List, Optional, Sequence

from src.errors import EmptySequence, TreeHeightExceeded
from src.fforest.tree import Node, TreeStats, leaf, make_node, tree_height_bound
from src.monoid.base import FiniteMonoid


class SimonTreeBuilder:
    """
    Build factorization trees over sequences of subtrees.

    Items may be leaves or whole subtrees; their labels are treated as
    letters, so the result's leaves are the concatenated leaves of the items.
    """

    def __init__(self, monoid: FiniteMonoid, stats: Optional[TreeStats] = None):
        self.monoid = monoid
        self.stats = stats if stats is not None else TreeStats()
        green = monoid.green
        self._r = green.r_class.tolist()
        self._l = green.l_class.tolist()
        self._j = green.j_class.tolist()
        h_sizes = Counter(zip(self._r, self._l))
        # Elements whose H-class has two or more elements.
        self._wide = [h_sizes[key] > 1 for key in zip(self._r, self._l)]

    def _mul(self, a: int, b: int) -> int:
        self.stats.products += 1
        return self.monoid.mul(a, b)

    def _node(self, children: Sequence[Node]) -> Node:
        return make_node(children, self.monoid, self.stats)

    def _product(self, items: Sequence[Node]) -> int:
        value = items[0].label
        for item in items[1:]:
            value = self._mul(value, item.label)
        return value

    def build(self, items: Sequence[Node]) -> Node:
        """
        Factorization tree whose leaf sequence is the items' leaves in order.

        Raises:
            EmptySequence: ``items`` is empty
        """
        if not items:
            raise EmptySequence("cannot factor an empty sequence")
        if len(items) == 1:
            return items[0]
        total = self._product(items)
        j_total = self._j[total]

        blocks: List[Node] = []
        start = 0
        running = self.monoid.identity
        for i, item in enumerate(items):
            running = self._mul(running, item.label)
            if self._j[running] == j_total:
                head = items[start:i]
                blocks.append(self._node([self.build(head), item]) if head else item)
                start = i + 1
                running = self.monoid.identity
        if start == len(items):
            return self._regular(blocks)
        tail = self.build(items[start:])
        if self._wide[total]:
            # The last block times the suffix stays in J0.
            blocks[-1] = self._node([blocks[-1], tail])
            return self._regular(blocks)
        return self._node([self._regular(blocks), tail])

    def _regular(self, items: Sequence[Node]) -> Node:
        """Items in one J-class with every infix product in it."""
        if len(items) == 1:
            return items[0]
        r0 = self._r[items[0].label]
        pieces: List[Node] = []
        current: List[Node] = []
        for item in items:
            if self._r[item.label] == r0 and current:
                pieces.append(self._close_head(current))
                current = []
            current.append(item)
        pieces.append(self._close_head(current))
        return self._single_r(pieces)

    def _close_head(self, piece: Sequence[Node]) -> Node:
        if len(piece) == 1:
            return piece[0]
        return self._node([piece[0], self._regular(piece[1:])])

    def _single_r(self, items: Sequence[Node]) -> Node:
        """Items in one R-class of a regular J-class."""
        if len(items) == 1:
            return items[0]
        l0 = self._l[items[-1].label]
        pieces: List[Node] = []
        current: List[Node] = []
        for item in items:
            current.append(item)
            if self._l[item.label] == l0:
                pieces.append(self._close_tail(current))
                current = []
        return self._group(pieces)

    def _close_tail(self, piece: Sequence[Node]) -> Node:
        if len(piece) == 1:
            return piece[0]
        return self._node([self._single_r(piece[:-1]), piece[-1]])

    def _group(self, items: Sequence[Node]) -> Node:
        """Items in one group H-class with every infix product in it."""
        if len(items) == 1:
            return items[0]
        prefix = [items[0].label]
        for item in items[1:]:
            prefix.append(self._mul(prefix[-1], item.label))
        final = prefix[-1]
        hits = [i for i, value in enumerate(prefix) if value == final]
        if len(hits) == 1:
            return self._node([self._group(items[:-1]), items[-1]])

        first = hits[0]
        head = items[0] if first == 0 else self._node([self._group(items[:first]), items[first]])
        runs: List[Node] = []
        for a, b in zip(hits, hits[1:]):
            run = items[a + 1:b + 1]
            runs.append(run[0] if len(run) == 1 else self._node([self._group(run[:-1]), run[-1]]))
        # Every run multiplies to the group identity.
        if head.label == runs[0].label:
            return self._node([head, *runs])
        return self._node([head, self._node(runs)])


def build_simon_tree(
    labels: Sequence[int],
    monoid: FiniteMonoid,
    positions: Optional[Sequence[int]] = None,
    symbols: Optional[Sequence[int]] = None,
    stats: Optional[TreeStats] = None,
) -> Node:
    """
    Factorization tree of a label sequence.

    Args:
        labels: Monoid element per leaf
        monoid: Monoid the labels belong to
        positions: Leaf positions (default 1..n)
        symbols: Optional symbol stored on each leaf
        stats: Counters to update

    Raises:
        EmptySequence: ``labels`` is empty
        TreeHeightExceeded: the tree is taller than 3·|M|
    """
    if not len(labels):
        raise EmptySequence("cannot factor an empty sequence")
    positions = range(1, len(labels) + 1) if positions is None else positions
    leaves = [
        leaf(int(label), int(position), None if symbols is None else int(symbols[i]))
        for i, (label, position) in enumerate(zip(labels, positions))
    ]
    tree = SimonTreeBuilder(monoid, stats).build(leaves)
    bound = tree_height_bound(monoid)
    if tree.height > bound:
        raise TreeHeightExceeded(tree.height, bound)
    return tree
