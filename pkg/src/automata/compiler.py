"""
MSO to DFA compilation.

Every subformula is compiled over one shared track layout that holds the free
variables first, then every bound variable (renamed apart). An automaton for
a subformula only has to be correct on words where each first-order track of
the variables in scope carries exactly one mark; other words are "don't care".
Complement and product preserve that contract, and a first-order quantifier
first intersects with the exactly-one automaton of its track before
projecting. At the top the free first-order tracks are forced to exactly one
mark and the bound tracks are dropped.
"""
from functools import lru_cache
from itertools import count
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.automata.alphabet import TrackAlphabet
from src.automata.dfa import Dfa
from src.config import settings
from src.errors import StateBlowup
from src.formula.ast import (
    And, Equal, Exists, ExistsSet, Forall, ForallSet, FormulaAST, Implies, Label,
    Less, LessEq, Member, Node, Not, Or,
)
from src.formula.word import normalize_alphabet


def _rename_bound(node: Node, scope: Mapping[str, str], fresh) -> Node:
    """Give every quantifier a globally unique variable name."""
    match node:
        case Label(letter, var):
            return Label(letter, scope.get(var, var))
        case Less(a, b):
            return Less(scope.get(a, a), scope.get(b, b))
        case LessEq(a, b):
            return LessEq(scope.get(a, a), scope.get(b, b))
        case Equal(a, b):
            return Equal(scope.get(a, a), scope.get(b, b))
        case Member(var, setvar):
            return Member(scope.get(var, var), scope.get(setvar, setvar))
        case Not(body):
            return Not(_rename_bound(body, scope, fresh))
        case And(left, right) | Or(left, right) | Implies(left, right):
            return type(node)(_rename_bound(left, scope, fresh), _rename_bound(right, scope, fresh))
        case Exists(var, body) | Forall(var, body) | ExistsSet(var, body) | ForallSet(var, body):
            name = f"{var}#{next(fresh)}"
            return type(node)(name, _rename_bound(body, {**scope, var: name}, fresh))
    raise TypeError(f"not a formula node: {node!r}")


def _bound_variables(node: Node) -> Iterable[str]:
    match node:
        case Not(body):
            yield from _bound_variables(body)
        case And(left, right) | Or(left, right) | Implies(left, right):
            yield from _bound_variables(left)
            yield from _bound_variables(right)
        case Exists(var, body) | Forall(var, body) | ExistsSet(var, body) | ForallSet(var, body):
            yield var
            yield from _bound_variables(body)


class _Layout:
    """Symbol arithmetic for base letters × one bit per variable track."""

    def __init__(self, base_count: int, tracks: Sequence[str], letter_sets: Mapping[str, FrozenSet[int]]):
        self.base_count = base_count
        self.tracks = {name: i for i, name in enumerate(tracks)}
        self.size = base_count << len(tracks)
        codes = np.arange(self.size, dtype=np.int64)
        self.letters = codes % base_count
        self.masks = codes // base_count
        self.letter_sets = letter_sets

    def bit(self, var: str) -> np.ndarray:
        return (self.masks >> self.tracks[var]) & 1 == 1

    def partner(self, var: str) -> np.ndarray:
        codes = np.arange(self.size, dtype=np.int64)
        return codes + np.where(self.bit(var), -1, 1) * (self.base_count << self.tracks[var])

    def letter_in(self, letter: str) -> np.ndarray:
        return np.isin(self.letters, list(self.letter_sets.get(letter, ())))


def _table(rows, accepting) -> Dfa:
    return Dfa(np.array(rows, dtype=np.int32), 0, np.array(accepting, dtype=bool))


class _Compiler:
    def __init__(self, layout: _Layout, state_cap: int):
        self.layout = layout
        self.state_cap = state_cap
        self.constructions = 0

    def _constant(self, value: bool) -> Dfa:
        return _table([[0] * self.layout.size], [value])

    def finish(self, dfa: Dfa) -> Dfa:
        self.constructions += 1
        if dfa.n_states > self.state_cap:
            raise StateBlowup(dfa.n_states, self.state_cap)
        return dfa.minimize()

    def exactly_one(self, var: str) -> Dfa:
        b = self.layout.bit(var)
        return _table([np.where(b, 1, 0), np.where(b, 2, 1), np.full(self.layout.size, 2)], [False, True, False])

    def compile(self, node: Node) -> Dfa:
        lay = self.layout
        size = lay.size
        dead = np.full(size, -1)
        match node:
            case Label(letter, var):
                b, good = lay.bit(var), lay.letter_in(letter)
                return _table(
                    [np.where(b, np.where(good, 1, 2), 0), np.where(b, 2, 1), dead + 3],
                    [False, True, False],
                )
            case Less(u, v):
                if u == v:
                    return self._constant(False)
                bu, bv = lay.bit(u), lay.bit(v)
                return _table(
                    [
                        np.where(bv, 3, np.where(bu, 1, 0)),
                        np.where(bu, 3, np.where(bv, 2, 1)),
                        np.where(bu | bv, 3, 2),
                        dead + 4,
                    ],
                    [False, False, True, False],
                )
            case LessEq(u, v):
                if u == v:
                    return self._constant(True)
                bu, bv = lay.bit(u), lay.bit(v)
                return _table(
                    [
                        np.where(bu & bv, 2, np.where(bu, 1, np.where(bv, 3, 0))),
                        np.where(bu, 3, np.where(bv, 2, 1)),
                        np.where(bu | bv, 3, 2),
                        dead + 4,
                    ],
                    [False, False, True, False],
                )
            case Equal(u, v):
                if u == v:
                    return self._constant(True)
                bu, bv = lay.bit(u), lay.bit(v)
                return _table(
                    [np.where(bu & bv, 1, np.where(bu | bv, 2, 0)), np.where(bu | bv, 2, 1), dead + 3],
                    [False, True, False],
                )
            case Member(var, setvar):
                b, inside = lay.bit(var), lay.bit(setvar)
                return _table(
                    [np.where(b, np.where(inside, 1, 2), 0), np.where(b, 2, 1), dead + 3],
                    [False, True, False],
                )
            case Not(body):
                return self.compile(body).complement()
            case And(left, right):
                return self.finish(self.compile(left).product(self.compile(right), np.logical_and, self.state_cap))
            case Or(left, right):
                return self.finish(self.compile(left).product(self.compile(right), np.logical_or, self.state_cap))
            case Implies(left, right):
                both = self.compile(left).product(self.compile(right), lambda a, b: ~a | b, self.state_cap)
                return self.finish(both)
            case Exists(var, body):
                return self._exists(self.compile(body), var)
            case Forall(var, body):
                return self._exists(self.compile(body).complement(), var).complement()
            case ExistsSet(var, body):
                return self.finish(self.compile(body).project(lay.partner(var), self.state_cap))
            case ForallSet(var, body):
                projected = self.compile(body).complement().project(lay.partner(var), self.state_cap)
                return self.finish(projected).complement()
        raise TypeError(f"not a formula node: {node!r}")

    def _exists(self, body: Dfa, var: str) -> Dfa:
        restricted = self.finish(body.product(self.exactly_one(var), np.logical_and, self.state_cap))
        return self.finish(restricted.project(self.layout.partner(var), self.state_cap))


def compile_node(
    root: Node,
    free_first_order: Sequence[str],
    base: Sequence[str],
    letter_sets: Mapping[str, Iterable[int]],
    state_cap: Optional[int] = None,
) -> Dfa:
    """
    Compile a formula body over an arbitrary base alphabet.

    Args:
        root: Formula body; its free variables must be ``free_first_order``
        free_first_order: Output tracks, in order
        base: Names of the base symbols
        letter_sets: Predicate letter -> base symbol indices where it holds
        state_cap: StateBlowup threshold (default from settings)

    Returns:
        Minimal DFA over TrackAlphabet(base, free_first_order)
    """
    cap = settings.dfa_state_cap if state_cap is None else state_cap
    free = tuple(free_first_order)
    renamed = _rename_bound(root, {}, count(1))
    tracks = free + tuple(_bound_variables(renamed))
    layout = _Layout(len(base), tracks, {k: frozenset(v) for k, v in letter_sets.items()})
    compiler = _Compiler(layout, cap)

    dfa = compiler.compile(renamed)
    for var in free:
        dfa = compiler.finish(dfa.product(compiler.exactly_one(var), np.logical_and, cap))
    # Free tracks are the low bits, so dropping bound tracks keeps codes unchanged.
    result = dfa.relabel(np.arange(len(base) << len(free)), TrackAlphabet(tuple(base), free)).minimize()
    logger.debug(
        f"compiled formula over {len(tracks)} tracks: {result.n_states} states, "
        f"{compiler.constructions} intermediate constructions"
    )
    return result


def compile_formula(phi: FormulaAST, sigma: Optional[Sequence[str]] = None, state_cap: Optional[int] = None) -> Dfa:
    """
    Compile φ(x̄; ȳ) to a minimal DFA over Σ × {0,1}^(x̄ȳ).

    A word is accepted iff every track carries exactly one mark and the
    decoded assignment satisfies φ.

    Raises:
        StateBlowup: An intermediate automaton exceeded the state cap
    """
    alphabet = normalize_alphabet(sigma if sigma is not None else (phi.alphabet or sorted(phi.letters())))
    letter_sets: Dict[str, Tuple[int, ...]] = {letter: (i,) for i, letter in enumerate(alphabet)}
    return compile_node(phi.root, phi.free_vars, alphabet, letter_sets, state_cap)


@lru_cache(maxsize=64)
def compiled_formula(phi: FormulaAST, sigma: Tuple[str, ...]) -> Dfa:
    """Memoized ``compile_formula`` for repeated labeling."""
    return compile_formula(phi, sigma)
