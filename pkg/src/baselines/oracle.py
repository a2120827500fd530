"""
Brute-force ground truth for parameter learning and class membership.
"""
import itertools
from typing import Iterator, List, Optional, Sequence, Tuple

from src.errors import ArityMismatch
from src.formula.ast import FormulaAST
from src.formula.semantics import eval_semantic
from src.formula.word import WordStructure
from src.learner.training import TrainingSet


def _check(word: WordStructure, phi: FormulaAST, training: TrainingSet) -> None:
    if len(training) and training.arity != phi.k:
        raise ArityMismatch(f"formula has {phi.k} instance variables, training set arity is {training.arity}")
    training.check_range(word.n)


def _consistent(word: WordStructure, phi: FormulaAST, pairs, params: Tuple[int, ...]) -> bool:
    return all(eval_semantic(phi, word, instance, params) == bool(label) for instance, label in pairs)


def iter_consistent(word: WordStructure, phi: FormulaAST, training: TrainingSet) -> Iterator[Tuple[int, ...]]:
    """Every consistent v̄ in lexicographic order."""
    _check(word, phi, training)
    pairs = training.pairs()
    for params in itertools.product(range(1, word.n + 1), repeat=phi.ell):
        if _consistent(word, phi, pairs, params):
            yield params


def oracle_learn(word: WordStructure, phi: FormulaAST, training: TrainingSet) -> Optional[Tuple[int, ...]]:
    """
    Lexicographically least v̄ consistent with φ, B and T, or None.

    Scans all n^ℓ tuples with the reference semantics. For ℓ = 0 the answer
    is () exactly when φ itself labels T correctly.
    """
    return next(iter_consistent(word, phi, training), None)


def consistent_parameters(word: WordStructure, phi: FormulaAST, training: TrainingSet) -> List[Tuple[int, ...]]:
    return list(iter_consistent(word, phi, training))


def order_type(values: Sequence[int]) -> Tuple[int, ...]:
    """Dense rank of each value: equal values share a rank."""
    ranks = {v: i for i, v in enumerate(sorted(set(values)))}
    return tuple(ranks[v] for v in values)


def class_oracle_qf(word: WordStructure, training: TrainingSet, ell: int) -> bool:
    """
    Whether some quantifier-free φ(x̄; y1..yl) is consistent with T.

    A quantifier-free formula only sees the letters of x̄ and the order type
    of (x̄, ȳ); letters at ȳ are the same for every example. So a hypothesis
    exists iff for some v̄ no two examples with different labels share both.
    """
    training.check_range(word.n)
    pairs = training.pairs()
    codes = word.codes
    for params in itertools.product(range(1, word.n + 1), repeat=ell):
        seen = {}
        for instance, label in pairs:
            key = (tuple(int(codes[p - 1]) for p in instance), order_type(instance + params))
            if seen.setdefault(key, label) != label:
                break
        else:
            return True
    return False


def class_oracle_exist_unary(word: WordStructure, training: TrainingSet) -> bool:
    """
    Whether the per-letter interval hypotheses can separate T.

    For every letter, no negative example may lie between two positive
    examples that carry the same letter.
    """
    training.check_range(word.n)
    labels = training.unary()
    for u, label in labels.items():
        if label:
            continue
        letter = word.codes[u - 1]
        same = [p for p, lab in labels.items() if lab and word.codes[p - 1] == letter]
        if any(p < u for p in same) and any(p > u for p in same):
            return False
    return True
