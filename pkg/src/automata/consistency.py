"""
The consistency language L̂(φ) over Σ̂.

An annotated string is in L̂(φ) when every parameter occurs exactly once and
each position classified 1 (resp. 0) satisfies (resp. falsifies) φ(x; v̄).
The automaton comes out of the ordinary compiler: the classification
component is read as two extra letter predicates over the base alphabet Γ.
"""
from typing import Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from src.automata.alphabet import NEGATIVE, POSITIVE, AnnotatedAlphabet
from src.automata.compiler import compile_node
from src.automata.dfa import Dfa
from src.errors import ArityMismatch
from src.formula.ast import And, Forall, FormulaAST, Implies, Label, Not
from src.formula.word import normalize_alphabet

# Predicate letters for the classification component; never valid DSL letters.
_CLASSIFIED_NEGATIVE = "#0"
_CLASSIFIED_POSITIVE = "#1"


def build_consistency_dfa(phi: FormulaAST, sigma: Optional[Sequence[str]] = None, state_cap: Optional[int] = None) -> Dfa:
    """
    Build a minimal DFA for L̂(φ) over Σ̂ = Σ × 2^{y1..yl} × {?,0,1}.

    Args:
        phi: Unary formula φ(x; ȳ)
        sigma: Base alphabet (default: the formula's declared alphabet)
        state_cap: StateBlowup threshold

    Returns:
        Dfa whose legend is the AnnotatedAlphabet of (Σ, ȳ)

    Raises:
        ArityMismatch: φ is not unary
        StateBlowup: Compilation exceeded the state cap
    """
    if phi.k != 1:
        raise ArityMismatch(f"consistency automata need a unary formula, got k={phi.k}")
    alphabet = AnnotatedAlphabet(
        normalize_alphabet(sigma if sigma is not None else (phi.alphabet or sorted(phi.letters()))),
        phi.param_vars,
    )
    width = len(alphabet.sigma)
    gamma_names: List[str] = [alphabet.describe_gamma(g) for g in range(alphabet.gamma_size)]
    letter_sets: Dict[str, List[int]] = {
        letter: [alphabet.gamma_encode(i, c) for c in range(3)] for i, letter in enumerate(alphabet.sigma)
    }
    letter_sets[_CLASSIFIED_NEGATIVE] = [alphabet.gamma_encode(i, NEGATIVE) for i in range(width)]
    letter_sets[_CLASSIFIED_POSITIVE] = [alphabet.gamma_encode(i, POSITIVE) for i in range(width)]

    x = phi.instance_vars[0]
    agreement = Forall(
        x,
        And(
            Implies(Label(_CLASSIFIED_POSITIVE, x), phi.root),
            Implies(Label(_CLASSIFIED_NEGATIVE, x), Not(phi.root)),
        ),
    )
    internal = compile_node(agreement, phi.param_vars, gamma_names, letter_sets, state_cap)

    # Internal symbols are gamma + |Γ|·K; reorder the columns into the Σ̂ layout.
    columns = np.empty(alphabet.size, dtype=np.int64)
    for code in range(alphabet.size):
        letter, mask, klass = alphabet.decode(code)
        columns[code] = alphabet.gamma_encode(letter, klass) + alphabet.gamma_size * mask
    dfa = internal.relabel(columns, alphabet).minimize()
    logger.info(f"consistency automaton: {dfa.n_states} states over {alphabet.size} annotated symbols")
    return dfa
