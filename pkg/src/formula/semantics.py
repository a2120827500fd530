"""
Reference model checker for MSO on words.

Exponential in the quantifier structure (set quantifiers enumerate all 2^n
subsets); it is the ground truth the automata, learners and baselines are
tested against, not a production evaluator.
"""
import itertools
from typing import Dict, List, Sequence, Union

from src.errors import ArityMismatch, PositionOutOfRange
from src.formula.ast import (
    And, Equal, Exists, ExistsSet, Forall, ForallSet, FormulaAST, Implies, Label,
    Less, LessEq, Member, Node, Not, Or,
)
from src.formula.word import WordStructure

# Set variables are bound to bit masks: bit p-1 set iff position p is a member.
Value = int


def _holds(node: Node, word: Sequence[str], n: int, env: Dict[str, Value]) -> bool:
    match node:
        case Label(letter, var):
            return word[env[var] - 1] == letter
        case Less(a, b):
            return env[a] < env[b]
        case LessEq(a, b):
            return env[a] <= env[b]
        case Equal(a, b):
            return env[a] == env[b]
        case Member(var, setvar):
            return bool((env[setvar] >> (env[var] - 1)) & 1)
        case Not(body):
            return not _holds(body, word, n, env)
        case And(left, right):
            return _holds(left, word, n, env) and _holds(right, word, n, env)
        case Or(left, right):
            return _holds(left, word, n, env) or _holds(right, word, n, env)
        case Implies(left, right):
            return (not _holds(left, word, n, env)) or _holds(right, word, n, env)
        case Exists(var, body):
            return any(_holds(body, word, n, {**env, var: p}) for p in range(1, n + 1))
        case Forall(var, body):
            return all(_holds(body, word, n, {**env, var: p}) for p in range(1, n + 1))
        case ExistsSet(var, body):
            return any(_holds(body, word, n, {**env, var: mask}) for mask in range(1 << n))
        case ForallSet(var, body):
            return all(_holds(body, word, n, {**env, var: mask}) for mask in range(1 << n))
    raise TypeError(f"not a formula node: {node!r}")


def _bind(phi: FormulaAST, B: WordStructure, instance: Sequence[int], params: Sequence[int]) -> Dict[str, Value]:
    if len(instance) != phi.k:
        raise ArityMismatch(f"formula has {phi.k} instance variables, got {len(instance)} positions")
    if len(params) != phi.ell:
        raise ArityMismatch(f"formula has {phi.ell} parameters, got {len(params)} positions")
    env: Dict[str, Value] = {}
    for var, position in zip(phi.free_vars, tuple(instance) + tuple(params)):
        if not 1 <= position <= B.n:
            raise PositionOutOfRange(position, B.n)
        env[var] = int(position)
    return env


def eval_semantic(phi: FormulaAST, B: WordStructure, instance: Sequence[int], params: Sequence[int] = ()) -> bool:
    """
    Decide B |= φ(ū; v̄) by structural recursion.

    Args:
        phi: Formula with k instance and l parameter variables
        B: Word structure
        instance: Positions for x1..xk
        params: Positions for y1..yl

    Returns:
        True iff the formula holds under the assignment

    Raises:
        ArityMismatch: Tuple lengths differ from k or l
        PositionOutOfRange: A position lies outside 1..n
    """
    env = _bind(phi, B, instance, params)
    return _holds(phi.root, B.symbols, B.n, env)


def label_by_hypothesis(
    phi: FormulaAST,
    B: WordStructure,
    params: Sequence[int] = (),
    engine: str = "semantic",
) -> List[bool]:
    """
    Classify every instance tuple of B under φ(x̄; v̄).

    Entries are ordered lexicographically by instance tuple, so for k=1 entry
    p-1 belongs to position p. An empty word yields an empty list.

    ``engine="automaton"`` (k=1 only) compiles φ once and labels all positions
    with a forward and a backward pass instead of n separate evaluations.
    """
    if B.n == 0 and phi.k > 0:
        return []
    if engine == "automaton":
        if phi.k != 1:
            raise ArityMismatch("the automaton engine labels unary formulas only")
        from src.automata.compiler import compiled_formula

        _bind(phi, B, (1,), params)
        dfa = compiled_formula(phi, B.alphabet)
        return dfa.label_positions(B, params)
    if engine != "semantic":
        raise ValueError(f"Unsupported labeling engine: {engine}")

    word = B.symbols
    labels = []
    for instance in itertools.product(range(1, B.n + 1), repeat=phi.k):
        env = _bind(phi, B, instance, params)
        labels.append(_holds(phi.root, word, B.n, env))
    return labels
