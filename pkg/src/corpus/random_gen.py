"""
Seeded random strings and φ-consistent training sets.
"""
from typing import Optional, Sequence

import numpy as np

from src.config import settings
from src.corpus.adversarial import Generated
from src.errors import NotEnoughInstances
from src.formula.ast import FormulaAST
from src.formula.semantics import eval_semantic, label_by_hypothesis
from src.formula.word import WordStructure, normalize_alphabet
from src.learner.training import TrainingSet


def make_rng(seed: Optional[int]) -> np.random.Generator:
    """Generator with the configured bit generator (PCG64 by default)."""
    bit_generator = getattr(np.random, settings.rng_algorithm)
    return np.random.Generator(bit_generator(seed))


def random_word(n: int, alphabet: Sequence[str], seed: Optional[int] = None) -> WordStructure:
    letters = normalize_alphabet(alphabet)
    codes = make_rng(seed).integers(0, len(letters), size=n)
    return WordStructure(letters, codes)


def _decode(index: int, n: int, k: int) -> tuple:
    """Lexicographic rank -> instance tuple over 1..n."""
    digits = []
    for _ in range(k):
        index, digit = divmod(index, n)
        digits.append(digit + 1)
    return tuple(reversed(digits))


def gen_random_consistent(
    word: WordStructure,
    phi: FormulaAST,
    t: int,
    seed: Optional[int] = None,
    engine: str = "auto",
) -> Generated:
    """
    Sample v̄ uniformly, then t distinct instances labeled by φ(x̄; v̄).

    The training set is φ-consistent by construction and the result depends
    only on the inputs and the seed. ``engine="auto"`` labels unary formulas
    with the compiled automaton and everything else semantically.

    Raises:
        NotEnoughInstances: t exceeds n^k, or parameters are needed on an empty word
    """
    n, k = word.n, phi.k
    available = n ** k
    if t > available:
        raise NotEnoughInstances(t, available)
    if phi.ell and not n:
        raise NotEnoughInstances(phi.ell, 0)
    rng = make_rng(seed)
    params = tuple(int(p) for p in rng.integers(1, n + 1, size=phi.ell)) if phi.ell else ()
    ranks = np.sort(rng.choice(available, size=t, replace=False)) if t else np.array([], dtype=np.int64)
    instances = [_decode(int(rank), n, k) for rank in ranks]

    if k == 1 and engine in ("auto", "automaton"):
        labels = label_by_hypothesis(phi, word, params, engine="automaton") if instances else []
        pairs = [(u, int(labels[u[0] - 1])) for u in instances]
    else:
        pairs = [(u, int(eval_semantic(phi, word, u, params))) for u in instances]
    return Generated(word, params, TrainingSet.from_pairs(pairs))
