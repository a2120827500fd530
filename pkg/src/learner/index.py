"""
Indexing phase: everything that depends on B but not on the training set.
"""
import time
from dataclasses import dataclass, field
from threading import Lock
from typing import Any, Dict, Optional

from loguru import logger

from src.automata.alphabet import AnnotatedAlphabet
from src.automata.consistency import build_consistency_dfa
from src.automata.dfa import Dfa
from src.config import settings
from src.errors import AlphabetError, ArityMismatch, SimonLearnError
from src.fforest.builder import build_simon_tree
from src.fforest.tree import Node, TreeStats, tree_height_bound
from src.fforest.verify import verify_tree
from src.formula.ast import FormulaAST
from src.formula.word import WordStructure
from src.monoid.power import PowerMonoid, power_monoid
from src.monoid.tagged import TaggedMonoid, transition_monoid


@dataclass(eq=False)
class Index:
    """
    Precomputed index of B for one unary formula.

    The tree is the factorization tree of B_∅ (every position classified ?).
    All fields are read-only after construction except the cumulative
    counters, which are updated under a lock so queries may run in parallel.
    """
    word: WordStructure
    formula: Optional[FormulaAST]
    dfa: Dfa
    mhat: TaggedMonoid
    power: PowerMonoid
    tree: Node
    build_stats: TreeStats = field(default_factory=TreeStats)
    counters: TreeStats = field(default_factory=TreeStats)
    queries: int = 0
    _lock: Lock = field(default_factory=Lock, repr=False)

    @property
    def alphabet(self) -> AnnotatedAlphabet:
        return self.mhat.alphabet

    @property
    def ell(self) -> int:
        return self.alphabet.ell

    @property
    def height(self) -> int:
        return self.tree.height

    @property
    def formula_text(self) -> Optional[str]:
        return self.formula.text() if self.formula is not None else None

    def record_query(self, stats: TreeStats) -> None:
        with self._lock:
            self.counters.add(stats)
            self.queries += 1

    def summary(self) -> Dict[str, Any]:
        with self._lock:
            counters = self.counters.as_dict()
            queries = self.queries
        return {
            "n": self.word.n,
            "alphabet": list(self.alphabet.sigma),
            "params": list(self.alphabet.params),
            "dfa_states": self.dfa.n_states,
            "tagged_monoid": self.mhat.size,
            "power_monoid": self.power.size,
            "height": self.height,
            "height_bound": tree_height_bound(self.power),
            "build": self.build_stats.as_dict(),
            "queries": queries,
            "query_counters": counters,
        }


def build_index(
    word: WordStructure,
    phi: FormulaAST,
    state_cap: Optional[int] = None,
    monoid_cap: Optional[int] = None,
    power_cap: Optional[int] = None,
    verify: Optional[bool] = None,
) -> Index:
    """
    Index B for learning parameters of φ.

    Args:
        word: The background string B
        phi: Unary formula φ(x; ȳ) over B's alphabet
        state_cap, monoid_cap, power_cap: Overrides for the configured caps
        verify: Run verify_tree on the base tree (default settings.verify_index)

    Raises:
        ArityMismatch: φ is not unary
        AlphabetError: φ mentions letters outside B's alphabet
        StateBlowup, MonoidBlowup: A construction exceeded its cap
        EmptySequence: B is empty
    """
    if phi.k != 1:
        raise ArityMismatch(f"the indexed learner needs a unary formula, got k={phi.k}")
    missing = phi.letters() - set(word.alphabet)
    if missing:
        raise AlphabetError(f"formula letters {sorted(missing)} are not in alphabet {word.alphabet}")
    dfa = build_consistency_dfa(phi, word.alphabet, state_cap)
    return build_index_from_dfa(word, dfa, phi, monoid_cap, power_cap, verify)


def build_index_from_dfa(
    word: WordStructure,
    dfa: Dfa,
    formula: Optional[FormulaAST] = None,
    monoid_cap: Optional[int] = None,
    power_cap: Optional[int] = None,
    verify: Optional[bool] = None,
) -> Index:
    """
    Index B for an externally supplied automaton over Σ̂.

    The automaton's legend must be the AnnotatedAlphabet of B's alphabet.
    """
    alphabet = dfa.legend
    if not isinstance(alphabet, AnnotatedAlphabet) or alphabet.sigma != word.alphabet:
        raise AlphabetError("automaton legend does not annotate the word's alphabet")
    started = time.perf_counter()
    mhat = transition_monoid(dfa, cap=monoid_cap)
    power = power_monoid(mhat, cap=power_cap)
    logger.debug(f"monoids for n={word.n} built in {time.perf_counter() - started:.3f}s")
    return index_word(word, dfa, mhat, power, formula, verify)


def index_word(
    word: WordStructure,
    dfa: Dfa,
    mhat: TaggedMonoid,
    power: PowerMonoid,
    formula: Optional[FormulaAST] = None,
    verify: Optional[bool] = None,
) -> Index:
    """
    Index B with monoids that were already built for its alphabet and formula.

    Only the factorization tree depends on B, so many strings can share one
    set of monoids.
    """
    if power.mhat is not mhat or mhat.alphabet.sigma != word.alphabet:
        raise AlphabetError("monoids were not built for this word's alphabet")
    started = time.perf_counter()
    stats = TreeStats()
    labels = power.symbols[word.codes] if word.n else []
    # Γ code of (a, ?) is the letter index itself.
    tree = build_simon_tree(labels, power, symbols=word.codes, stats=stats)
    tree_seconds = time.perf_counter() - started

    if settings.verify_index if verify is None else verify:
        report = verify_tree(tree, power)
        if not report:
            raise SimonLearnError(f"index tree failed verification: {report.errors}")
    logger.info(
        f"indexed n={word.n}: |M̂|={mhat.size}, |𝓜|={power.size}, height {tree.height} "
        f"(tree {tree_seconds:.3f}s)"
    )
    return Index(word, formula, dfa, mhat, power, tree, stats)
