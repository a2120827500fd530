"""
Consistent learner for unary existential formulas.

With one instance variable, an existential hypothesis can select at most one
interval of positions per letter. For every letter with positive examples the
learner brackets them by two parameters; the interval is widened as far as
the nearest negative examples of the same letter allow, and its endpoints are
snapped to real positions of that letter.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from src.baselines.hypothesis import Hypothesis, disjunction, header
from src.formula.word import WordStructure
from src.learner.training import TrainingSet


@dataclass(frozen=True)
class LetterIndex:
    """
    Per-letter position lists and prefix counts of a word.

    ``prefix[a][p]`` is the number of a-positions among 1..p.
    """
    positions: Tuple[np.ndarray, ...]
    prefix: np.ndarray

    @classmethod
    def build(cls, word: WordStructure) -> "LetterIndex":
        width = len(word.alphabet)
        onehot = np.zeros((width, word.n + 1), dtype=np.int64)
        onehot[word.codes, np.arange(1, word.n + 1)] = 1
        positions = tuple(np.flatnonzero(onehot[a]) for a in range(width))
        return cls(positions, np.cumsum(onehot, axis=1))

    def count(self, letter: int, lo: int, hi: int) -> int:
        """Number of ``letter`` positions in lo..hi."""
        if hi < lo:
            return 0
        return int(self.prefix[letter, hi] - self.prefix[letter, lo - 1])

    def next_at_or_after(self, letter: int, position: int) -> Optional[int]:
        found = self.positions[letter]
        i = np.searchsorted(found, position, side="left")
        return int(found[i]) if i < found.size else None

    def previous_at_or_before(self, letter: int, position: int) -> Optional[int]:
        found = self.positions[letter]
        i = np.searchsorted(found, position, side="right") - 1
        return int(found[i]) if i >= 0 else None


def interval_formula(letter: str, lo: str, hi: str, instance: str = "x", witness: str = "z") -> str:
    """x is an a-position at most ``hi`` with an a-position at or after ``lo`` up to x."""
    return (
        f"R{letter}({instance}) & {instance} <= {hi} & "
        f"exists {witness}. (R{letter}({witness}) & {lo} <= {witness} & {witness} <= {instance})"
    )


def exist_learn_unary(
    word: WordStructure,
    training: TrainingSet,
    letters: Optional[LetterIndex] = None,
) -> Optional[Hypothesis]:
    """
    Interval hypothesis consistent with T, or None.

    Fails exactly when a negative example lies between two positive examples
    carrying its letter. The hypothesis has two parameters per letter with
    positive examples; with no positives it is constant false.
    """
    training.check_range(word.n)
    labels = training.unary()
    letters = letters if letters is not None else LetterIndex.build(word)
    codes = word.codes

    positives: Dict[int, List[int]] = {}
    negatives: Dict[int, List[int]] = {}
    for u, label in labels.items():
        (positives if label else negatives).setdefault(int(codes[u - 1]), []).append(u)

    names: List[str] = []
    params: List[int] = []
    disjuncts: List[str] = []
    for a in sorted(positives):
        lo, hi = min(positives[a]), max(positives[a])
        below = [u for u in negatives.get(a, []) if u < lo]
        above = [u for u in negatives.get(a, []) if u > hi]
        if len(below) + len(above) != len(negatives.get(a, [])):
            logger.debug(f"negative {word.alphabet[a]}-example inside the positive interval {lo}..{hi}")
            return None
        # Widen to the first a-position after the nearest negative, and symmetrically.
        start = letters.next_at_or_after(a, max(below) + 1) if below else letters.next_at_or_after(a, 1)
        end = letters.previous_at_or_before(a, min(above) - 1) if above else letters.previous_at_or_before(a, word.n)
        lo_name, hi_name = f"lo{len(disjuncts) + 1}", f"hi{len(disjuncts) + 1}"
        names += [lo_name, hi_name]
        params += [start, end]
        disjuncts.append(interval_formula(word.alphabet[a], lo_name, hi_name))

    text = f"{header(('x',), names, word.alphabet)}\n{disjunction(disjuncts)}\n"
    return Hypothesis(formula_text=text, params=tuple(params), learner="exist-unary", iterations=len(labels))
