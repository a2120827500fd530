"""
Splicing a training set into the base index tree.

B_T = B_0 γ_1 B_1 ... γ_t B_t where γ_i is the classified symbol at the i-th
training position and B_i are the unclassified factors between them. Each
factor is extracted from the base tree, each γ_i becomes a fresh leaf, and
the resulting sequence of subtrees is factored again.
"""
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from src.automata.alphabet import class_of_label
from src.errors import ContradictoryLabels, PositionOutOfRange
from src.fforest.builder import SimonTreeBuilder
from src.fforest.extract import subtree_for_range
from src.fforest.tree import Node, TreeStats, leaf
from src.formula.word import WordStructure
from src.monoid.power import PowerMonoid

Labels = Union[Mapping[int, int], Iterable[Tuple[int, int]]]


def normalize_labels(labels: Labels, n: int) -> Dict[int, int]:
    """
    Position -> label with positions checked against 1..n.

    Raises:
        ContradictoryLabels: A position has both labels
        PositionOutOfRange: A position lies outside the word
    """
    pairs = labels.items() if isinstance(labels, Mapping) else labels
    result: Dict[int, int] = {}
    for position, label in pairs:
        position, label = int(position), 1 if label else 0
        if not 1 <= position <= n:
            raise PositionOutOfRange(position, n)
        if result.setdefault(position, label) != label:
            raise ContradictoryLabels(position)
    return result


def splice_training(
    tree: Node,
    word: WordStructure,
    labels: Labels,
    monoid: PowerMonoid,
    stats: Optional[TreeStats] = None,
) -> Node:
    """
    Factorization tree of B_T from the tree of B_∅.

    The base tree is never modified; untouched subtrees are shared. With an
    empty training set the base tree itself is returned.

    Args:
        tree: Base tree whose leaves are the positions 1..n of ``word``
        word: The indexed string B
        labels: Training labels by position
        monoid: Power monoid the tree is labeled in
        stats: Counters to update

    Returns:
        Tree of height at most 2·height(tree) + 3·|𝓜| + 1
    """
    stats = stats if stats is not None else TreeStats()
    training = normalize_labels(labels, word.n)
    if not training:
        return tree
    alphabet = monoid.mhat.alphabet
    codes = word.codes

    items: List[Node] = []
    previous = 0
    for position in sorted(training):
        if position > previous + 1:
            items.append(subtree_for_range(tree, previous + 1, position - 1, monoid, stats))
        gamma = alphabet.gamma_encode(int(codes[position - 1]), class_of_label(training[position]))
        items.append(leaf(monoid.symbol_element(gamma), position, gamma))
        stats.nodes_created += 1
        previous = position
    if previous < word.n:
        items.append(subtree_for_range(tree, previous + 1, word.n, monoid, stats))
    return SimonTreeBuilder(monoid, stats).build(items)
