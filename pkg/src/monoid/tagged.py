"""
The tagged transition monoid M̂.

An element is a pair (map, tag): ``map`` is the state transformation of the
consistency DFA induced by an annotated word, ``tag`` is the set of parameters
that word marks. Marking a parameter twice sends the word to ⊥; all such
words share one absorbing sink element.
"""
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from src.automata.alphabet import AnnotatedAlphabet
from src.automata.dfa import Dfa
from src.config import settings
from src.errors import AlphabetError, MonoidBlowup
from src.monoid.base import FiniteMonoid, table_violations

BOTTOM = -1


def _key(tag: int, mapping: np.ndarray) -> bytes:
    return int(tag).to_bytes(8, "little", signed=True) + mapping.tobytes()


class TaggedMonoid(FiniteMonoid):
    """
    M̂ with its morphism ĥ: Σ̂ → M̂ and accepting set F̂.

    Element 0 is the identity (identity map, ∅). Other elements are numbered
    in breadth-first discovery order. The multiplication table is dense.

    Attributes:
        maps: (size, Q) int32, row m is the state map of element m
        tags: (size,) int64 parameter masks, BOTTOM for the sink
        table: (size, size) int64, table[a, b] = a·b
        hhat: (|Σ̂|,) element of every annotated symbol
        accepting: (size,) bool, membership in F̂
    """

    def __init__(
        self,
        maps: np.ndarray,
        tags: np.ndarray,
        table: np.ndarray,
        hhat: np.ndarray,
        accepting: np.ndarray,
        alphabet: AnnotatedAlphabet,
        initial_state: int = 0,
    ):
        self.maps = maps
        self.tags = tags
        self.table = table
        self.hhat = hhat
        self.accepting = accepting
        self.alphabet = alphabet
        self.initial_state = initial_state
        for array in (maps, tags, table, hhat, accepting):
            array.setflags(write=False)
        self._rows = table.tolist()
        self._generators = tuple(sorted(set(hhat.tolist())))
        bottoms = np.flatnonzero(tags == BOTTOM)
        self.bottom: Optional[int] = int(bottoms[0]) if bottoms.size else None

    # ==================== FiniteMonoid ====================

    @property
    def size(self) -> int:
        return int(self.tags.shape[0])

    @property
    def identity(self) -> int:
        return 0

    @property
    def generators(self) -> Sequence[int]:
        return self._generators

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def full_table(self) -> np.ndarray:
        return self.table

    # ==================== Tags ====================

    @property
    def ell(self) -> int:
        return self.alphabet.ell

    @property
    def full_tag(self) -> int:
        return (1 << self.ell) - 1

    def tag(self, m: int) -> Optional[int]:
        """Parameter mask of ``m``; None for ⊥."""
        value = int(self.tags[m])
        return None if value == BOTTOM else value

    def is_bottom(self, m: int) -> bool:
        return m == self.bottom

    def tag_names(self, m: int) -> List[str]:
        value = self.tag(m)
        if value is None:
            return ["⊥"]
        return [p for i, p in enumerate(self.alphabet.params) if value >> i & 1]

    # ==================== Evaluation ====================

    def evaluate(self, word: Sequence[int]) -> int:
        """ĥ of an annotated word given as Σ̂ codes."""
        rows, hhat = self._rows, self.hhat
        m = 0
        for symbol in np.asarray(word, dtype=np.int64).tolist():
            m = rows[m][hhat[symbol]]
        return m

    def accepts(self, word: Sequence[int]) -> bool:
        return bool(self.accepting[self.evaluate(word)])

    # ==================== Diagnostics ====================

    def dump(self) -> Dict[str, Any]:
        """Monoid dump: element count, generator map, table, tags, F̂."""
        return {
            "elements": self.size,
            "alphabet": self.alphabet.to_header(),
            "generators": {self.alphabet.describe(code): int(m) for code, m in enumerate(self.hhat)},
            "table": self.table.tolist(),
            "tags": [self.tag(m) for m in range(self.size)],
            "accepting": np.flatnonzero(self.accepting).tolist(),
        }

    def check_laws(self, limit: int = 200) -> List[str]:
        """
        Monoid laws plus the tag algebra; returns a list of violations.

        tag(a·b) must be ⊥ iff the tags intersect or one is ⊥, and their union
        otherwise. F̂ elements must carry the full tag.
        """
        problems = table_violations(self.table, 0, limit)
        tags = self.tags
        a_tags, b_tags = tags[:, None], tags[None, :]
        bottom = (a_tags == BOTTOM) | (b_tags == BOTTOM) | ((a_tags & b_tags) != 0)
        expected = np.where(bottom, BOTTOM, a_tags | b_tags)
        bad = np.argwhere(tags[self.table] != expected)
        if bad.size:
            a, b = bad[0]
            problems.append(f"tag algebra fails for ({a}, {b})")
        if np.any(self.accepting & (tags != self.full_tag)):
            problems.append("accepting element without the full parameter tag")
        return problems


def transition_monoid(dfa: Dfa, params: Optional[int] = None, cap: Optional[int] = None) -> TaggedMonoid:
    """
    Build M̂ from a total DFA over Σ̂.

    Args:
        dfa: Consistency automaton; its legend must be an AnnotatedAlphabet
        params: Expected ℓ (checked against the legend when given)
        cap: MonoidBlowup threshold (default settings.monoid_cap)

    Returns:
        TaggedMonoid with L(M̂, ĥ, F̂) = L(dfa)

    Raises:
        MonoidBlowup: The closure exceeded the cap
    """
    cap = settings.monoid_cap if cap is None else cap
    alphabet = dfa.legend
    if not isinstance(alphabet, AnnotatedAlphabet):
        raise AlphabetError("transition_monoid needs an automaton over an annotated alphabet")
    if params is not None and params != alphabet.ell:
        raise AlphabetError(f"automaton has {alphabet.ell} parameters, expected {params}")

    n_states = dfa.n_states
    codes = np.arange(alphabet.size)
    symbol_maps = np.ascontiguousarray(dfa.delta.T)
    symbol_tags = (codes // len(alphabet.sigma)) & ((1 << alphabet.ell) - 1)

    # Distinct generators, in symbol order.
    gen_maps: List[np.ndarray] = []
    gen_tags: List[int] = []
    seen = set()
    for mapping, tag in zip(symbol_maps, symbol_tags.tolist()):
        key = _key(tag, mapping)
        if key not in seen:
            seen.add(key)
            gen_maps.append(mapping)
            gen_tags.append(tag)

    identity = np.arange(n_states, dtype=np.int32)
    maps: List[np.ndarray] = [identity]
    tags: List[int] = [0]
    index: Dict[bytes, int] = {_key(0, identity): 0}
    bottom: Optional[int] = None
    position = 0
    while position < len(maps):
        current_map, current_tag = maps[position], tags[position]
        position += 1
        if current_tag == BOTTOM:
            continue
        for g_map, g_tag in zip(gen_maps, gen_tags):
            if current_tag & g_tag:
                if bottom is None:
                    bottom = len(maps)
                    maps.append(identity)
                    tags.append(BOTTOM)
                continue
            composed = g_map[current_map]
            tag = current_tag | g_tag
            key = _key(tag, composed)
            if key not in index:
                index[key] = len(maps)
                maps.append(composed)
                tags.append(tag)
                if len(maps) > cap:
                    raise MonoidBlowup(len(maps), cap, "tagged monoid")

    size = len(maps)
    map_array = np.stack(maps).astype(np.int32)
    tag_array = np.array(tags, dtype=np.int64)
    table = np.empty((size, size), dtype=np.int64)
    width = 8 + 4 * n_states
    for a in range(size):
        if tag_array[a] == BOTTOM:
            table[a] = bottom
            continue
        composed = np.ascontiguousarray(map_array[:, map_array[a]])
        row_tags = tag_array[a] | tag_array
        clash = (tag_array == BOTTOM) | ((tag_array[a] & tag_array) != 0)
        packed = np.empty((size, width), dtype=np.uint8)
        packed[:, :8] = row_tags.astype("<i8").view(np.uint8).reshape(size, 8)
        packed[:, 8:] = composed.view(np.uint8).reshape(size, 4 * n_states)
        keys = packed.view(np.dtype((np.void, width))).reshape(size).tolist()
        table[a] = [bottom if clash[b] else index[keys[b]] for b in range(size)]

    hhat = np.array([index[_key(tag, mapping)] for mapping, tag in zip(symbol_maps, symbol_tags.tolist())], dtype=np.int64)
    accepting = (tag_array == (1 << alphabet.ell) - 1) & dfa.accepting[map_array[:, dfa.initial]]
    if bottom is not None:
        accepting[bottom] = False
    logger.info(f"tagged monoid: {size} elements, {len(gen_maps)} generators, {int(accepting.sum())} accepting")
    return TaggedMonoid(map_array, tag_array, table, hhat, accepting, alphabet, dfa.initial)
