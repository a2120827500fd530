"""
Consistent learners for quantifier-free formulas.

A quantifier-free φ(x̄; ȳ) only sees the letters at x̄ and the order type of
(x̄, ȳ). Once parameters are placed, a hypothesis exists iff no positive and
negative example share both, and the positive cells form one as a DNF.
"""
import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from src.baselines.hypothesis import Hypothesis, QfClass, disjunction, header
from src.baselines.oracle import order_type
from src.errors import AlphabetError, ArityMismatch
from src.formula.word import WordStructure
from src.learner.training import TrainingSet

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


def instance_names(k: int) -> Tuple[str, ...]:
    return ("x",) if k == 1 else tuple(f"x{i}" for i in range(1, k + 1))


def param_names(ell: int) -> Tuple[str, ...]:
    return tuple(f"y{i}" for i in range(1, ell + 1))


def order_condition(order: Sequence[int], names: Sequence[str]) -> List[str]:
    """Comparisons between neighbours in rank order; they fix the order type."""
    ranked = sorted(range(len(order)), key=lambda i: (order[i], i))
    conditions = []
    for a, b in zip(ranked, ranked[1:]):
        op = "=" if order[a] == order[b] else "<"
        conditions.append(f"{names[a]} {op} {names[b]}")
    return conditions


def _key(codes, instance: Sequence[int], params: Sequence[int]) -> Key:
    return tuple(int(codes[p - 1]) for p in instance), order_type(tuple(instance) + tuple(params))


def emit_dnf(word: WordStructure, pairs, params: Sequence[int], k: int) -> str:
    """
    DSL text of the cell DNF for a consistent placement.

    One disjunct per positive cell. Letter literals are kept only when some
    negative example has the same order type.
    """
    names = instance_names(k) + param_names(len(params))
    cells: Dict[Key, int] = {}
    for instance, label in pairs:
        cells.setdefault(_key(word.codes, instance, params), label)
    negative_orders = {order for (_, order), label in cells.items() if not label}
    disjuncts: List[str] = []
    for (letters, order), label in sorted(cells.items()):
        if not label:
            continue
        literals = order_condition(order, names)
        if order in negative_orders:
            literals = [f"R{word.alphabet[a]}({names[i]})" for i, a in enumerate(letters)] + literals
        text = " & ".join(literals) if literals else f"{names[0]} = {names[0]}"
        if text not in disjuncts:
            disjuncts.append(text)
    body = disjunction(disjuncts, names[0])
    return f"{header(instance_names(k), param_names(len(params)), word.alphabet)}\n{body}\n"


def qf_learn_unary(word: WordStructure, training: TrainingSet, qf_class: QfClass) -> Optional[Hypothesis]:
    """
    Unary quantifier-free learner with one pass over T.

    Scanning T by position, a parameter is placed on an example as soon as its
    letter already occurred with the other label since the last parameter;
    that example then forms a cell of its own. Placing parameters this way
    uses the fewest of them, so T is separable iff at most ℓ are needed.
    """
    missing = set(word.alphabet) - set(qf_class.alphabet)
    if missing:
        raise AlphabetError(f"letters {sorted(missing)} are outside the hypothesis class alphabet")
    training.check_range(word.n)
    labels = training.unary()
    ell = qf_class.ell
    if ell and not word.n:
        return None

    cuts: List[int] = []
    current: Dict[int, int] = {}
    for u in sorted(labels):
        letter, label = int(word.codes[u - 1]), labels[u]
        if current.get(letter, label) != label:
            cuts.append(u)
            current = {}
            if len(cuts) > ell:
                logger.debug(f"quantifier-free learner needs more than {ell} parameters")
                return None
            continue
        current[letter] = label

    filler = cuts[-1] if cuts else 1
    params = tuple(cuts + [filler] * (ell - len(cuts)))
    pairs = [((u,), label) for u, label in labels.items()]
    return Hypothesis(
        formula_text=emit_dnf(word, pairs, params, 1),
        params=params,
        learner="qf-unary",
        iterations=len(labels),
    )


def _slots(coordinates: Sequence[int], n: int) -> List[Tuple[int, Optional[int]]]:
    """
    Parameter placements relative to sorted training coordinates.

    Slot 2j lies strictly between coordinate j-1 and j (or before the first,
    after the last); slot 2j+1 equals coordinate j. Each slot is returned as
    (doubled order representative, realizing position or None).
    """
    slots = []
    m = len(coordinates)
    for j in range(m + 1):
        lo = coordinates[j - 1] if j else 0
        hi = coordinates[j] if j < m else n + 1
        position = lo + 1 if lo + 1 < hi else None
        slots.append((2 * position if position is not None else lo + hi, position))
        if j < m:
            slots.append((2 * coordinates[j], coordinates[j]))
    return slots


def qf_learn_general(word: WordStructure, training: TrainingSet, k: int, ell: int) -> Optional[Hypothesis]:
    """
    k-ary quantifier-free learner by enumerating parameter placements.

    Every one of the (2|T|k+1)^ℓ placements is checked against all |T|
    examples, so ``iterations`` is exactly (2|T|k+1)^ℓ·|T|. The first
    consistent, realizable placement in enumeration order is returned.
    """
    training.check_range(word.n)
    pairs = training.pairs()
    if pairs and training.arity != k:
        raise ArityMismatch(f"training set arity {training.arity} differs from k={k}")
    coordinates = sorted(p for instance, _ in pairs for p in instance)
    slots = _slots(coordinates, word.n)
    codes = word.codes

    iterations = 0
    found: Optional[Tuple[int, ...]] = None
    for placement in itertools.product(slots, repeat=ell):
        doubled = tuple(value for value, _ in placement)
        seen: Dict[Key, int] = {}
        consistent = True
        for instance, label in pairs:
            iterations += 1
            key = (
                tuple(int(codes[p - 1]) for p in instance),
                order_type(tuple(2 * p for p in instance) + doubled),
            )
            if seen.setdefault(key, label) != label:
                consistent = False
        if consistent and found is None and all(position is not None for _, position in placement):
            found = tuple(position for _, position in placement)

    if found is None:
        logger.debug(f"no quantifier-free hypothesis with {ell} parameters ({iterations} checks)")
        return None
    return Hypothesis(
        formula_text=emit_dnf(word, pairs, found, k),
        params=found,
        learner="qf-general",
        iterations=iterations,
    )
