"""
Learning phase: consistent parameters from the spliced factorization tree.

After splicing T into the base tree, the root label is h(B_T): the set of
ĥ(B̂) over every parameter annotation B̂ of B_T. Any element of that set in
F̂ witnesses a consistent assignment. Walking down the tree, each element is
split into elements of the children's labels until every parameter reaches
the leaf that carries it.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from loguru import logger

from src.automata.alphabet import class_of_label
from src.errors import ArityMismatch, SimonLearnError
from src.fforest.splice import Labels, normalize_labels, splice_training
from src.fforest.tree import Node, TreeStats
from src.learner.index import Index
from src.learner.training import TrainingSet


@dataclass
class QueryStats(TreeStats):
    """Per-query counters; ``max_tagged_stack`` never exceeds ℓ."""
    pushes: int = 0
    max_tagged_stack: int = 0


def _labels(training: Union[TrainingSet, Labels], n: int):
    if isinstance(training, TrainingSet):
        training = training.unary()
    return normalize_labels(training, n)


def learn_parameters(
    index: Index,
    training: Union[TrainingSet, Labels],
    stats: Optional[QueryStats] = None,
) -> Optional[Tuple[int, ...]]:
    """
    Parameters v̄ consistent with φ, B and T, or None if there are none.

    Only the index and the training set are read; B is never rescanned.
    Decompositions always pick the smallest element indices, so the answer
    is deterministic.

    Raises:
        ContradictoryLabels: T labels a position both ways
        PositionOutOfRange: T mentions a position outside B
    """
    stats = stats if stats is not None else QueryStats()
    labels = _labels(training, index.word.n)
    mhat, power = index.mhat, index.power
    try:
        tree = splice_training(index.tree, index.word, labels, power, stats)
        candidates = power.accepting_members(tree.label)
        if not candidates.size:
            logger.debug(f"no consistent parameters for |T|={len(labels)}")
            return None
        if mhat.ell == 0:
            return ()
        values = _assign(tree, int(candidates[0]), index, stats)
    finally:
        index.record_query(stats)
    return values


def _assign(root: Node, m_root: int, index: Index, stats: QueryStats) -> Tuple[int, ...]:
    mhat, power = index.mhat, index.power
    tags = mhat.tags
    values: List[Optional[int]] = [None] * mhat.ell
    stack = [(m_root, root)]
    stats.max_tagged_stack = max(stats.max_tagged_stack, 1)
    while stack:
        m, node = stack.pop()
        stats.nodes_touched += 1
        if node.children is None:
            tag = int(tags[m])
            for i in range(mhat.ell):
                if tag >> i & 1:
                    values[i] = node.position
            continue
        if len(node.children) == 2:
            left, right = node.children
            split = power.decompose(left.label, right.label, m)
        else:
            left, right = node.children[0], node.children[-1]
            e = power.idempotent_of_empty_class(node.label)
            split = power.decompose_around(node.label, e, m)
        stats.products += 1
        if split is None:
            raise SimonLearnError(f"element {m} does not decompose at node {node.first}..{node.last}")
        for part, child in ((split[1], right), (split[0], left)):
            if tags[part] != 0:
                stack.append((part, child))
                stats.pushes += 1
        stats.max_tagged_stack = max(stats.max_tagged_stack, len(stack))

    if any(v is None for v in values):
        raise SimonLearnError("parameter left unassigned by the tree walk")
    return tuple(values)


def check_consistent(index: Index, params: Sequence[int], training: Union[TrainingSet, Labels]) -> bool:
    """
    Whether the consistency automaton accepts B̂ built from B, v̄ and T.

    Scans B once; meant for validation rather than the learning phase.
    """
    if len(params) != index.ell:
        raise ArityMismatch(f"expected {index.ell} parameters, got {len(params)}")
    labels = _labels(training, index.word.n)
    classes = {position: class_of_label(label) for position, label in labels.items()}
    codes = index.alphabet.encode_word(index.word.codes, [int(p) for p in params], classes)
    return index.dfa.accepts(codes)
