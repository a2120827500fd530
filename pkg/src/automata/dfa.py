"""
Deterministic finite automata over integer alphabets.

Transition tables are dense ``numpy`` arrays (states × symbols). Every
construction returns a total automaton whose states are numbered canonically:
breadth-first from the initial state, symbols in increasing order. Two runs
on the same input therefore produce identical tables.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import orjson

from src.automata.alphabet import OpaqueLegend, TrackAlphabet, legend_from_header
from src.errors import AlphabetError, ArityMismatch, PositionOutOfRange, StateBlowup

_TEXT_MAGIC = "# simonlearn dfa"
_TEXT_VERSION = 1


def _check_cap(states: int, cap: Optional[int]) -> None:
    if cap is not None and states > cap:
        raise StateBlowup(states, cap)


@dataclass(frozen=True, eq=False)
class Dfa:
    """
    Total DFA with states 0..Q-1 over symbols 0..A-1.

    Attributes:
        delta: int32 array of shape (Q, A)
        initial: Initial state
        accepting: bool array of shape (Q,)
        legend: Alphabet that names the symbols (TrackAlphabet, AnnotatedAlphabet, ...)
    """
    delta: np.ndarray
    initial: int
    accepting: np.ndarray
    legend: Any = None

    def __post_init__(self):
        delta = np.array(self.delta, dtype=np.int32)
        if delta.ndim != 2 or delta.shape[0] == 0:
            raise ValueError("delta must be a non-empty states x symbols table")
        accepting = np.array(self.accepting, dtype=bool).reshape(-1)
        if accepting.shape[0] != delta.shape[0]:
            raise ValueError("accepting vector does not match the state count")
        if delta.size and (delta.min() < 0 or delta.max() >= delta.shape[0]):
            raise ValueError("delta is not total: target state out of range")
        if not 0 <= self.initial < delta.shape[0]:
            raise ValueError(f"initial state {self.initial} out of range")
        delta.setflags(write=False)
        accepting.setflags(write=False)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "accepting", accepting)
        object.__setattr__(self, "initial", int(self.initial))
        if self.legend is None:
            object.__setattr__(self, "legend", OpaqueLegend(delta.shape[1]))

    @property
    def n_states(self) -> int:
        return int(self.delta.shape[0])

    @property
    def n_symbols(self) -> int:
        return int(self.delta.shape[1])

    @cached_property
    def _rows(self) -> List[List[int]]:
        return self.delta.tolist()

    def run(self, word: Sequence[int], start: Optional[int] = None) -> int:
        """State reached after reading ``word`` from ``start`` (default initial)."""
        rows = self._rows
        state = self.initial if start is None else start
        for symbol in word:
            state = rows[state][symbol]
        return state

    def accepts(self, word: Sequence[int]) -> bool:
        codes = np.asarray(word, dtype=np.int64)
        if codes.size and (codes.min() < 0 or codes.max() >= self.n_symbols):
            raise AlphabetError("symbol outside the automaton alphabet")
        return bool(self.accepting[self.run(codes.tolist())])

    # ==================== Constructions ====================

    def complement(self) -> "Dfa":
        return Dfa(self.delta, self.initial, ~self.accepting, self.legend)

    def product(
        self,
        other: "Dfa",
        combine: Callable[[np.ndarray, np.ndarray], np.ndarray] = np.logical_and,
        state_cap: Optional[int] = None,
    ) -> "Dfa":
        """
        Reachable product automaton.

        Args:
            other: Automaton over the same alphabet
            combine: Vectorized acceptance rule, e.g. ``np.logical_or``
            state_cap: StateBlowup threshold
        """
        if other.n_symbols != self.n_symbols:
            raise AlphabetError("product of automata over different alphabets")
        q2 = other.n_states
        ids: Dict[int, int] = {self.initial * q2 + other.initial: 0}
        pairs = [self.initial * q2 + other.initial]
        rows = []
        left = self.delta.astype(np.int64) * q2
        for pair in pairs:
            a, b = divmod(pair, q2)
            targets = []
            for key in (left[a] + other.delta[b]).tolist():
                target = ids.get(key)
                if target is None:
                    target = ids[key] = len(pairs)
                    pairs.append(key)
                targets.append(target)
            _check_cap(len(pairs), state_cap)
            rows.append(targets)
        pair_array = np.array(pairs, dtype=np.int64)
        accepting = combine(self.accepting[pair_array // q2], other.accepting[pair_array % q2])
        return Dfa(np.array(rows, dtype=np.int32), 0, accepting, self.legend)

    def project(self, partner: np.ndarray, state_cap: Optional[int] = None) -> "Dfa":
        """
        Existential projection of one track, determinized by subset construction.

        ``partner[s]`` is symbol ``s`` with the projected track's bit flipped;
        from a set of states, reading ``s`` may follow either value of the bit.
        Subsets are numbered in discovery order, which keeps results canonical.
        """
        n_states, n_symbols = self.delta.shape
        flipped = self.delta[:, partner]
        start = np.zeros(n_states, dtype=bool)
        start[self.initial] = True
        subsets = [start]
        ids = {np.packbits(start).tobytes(): 0}
        rows = []
        symbol_rows = np.arange(n_symbols)
        for subset in subsets:
            members = np.flatnonzero(subset)
            successors = np.zeros((n_symbols, n_states), dtype=bool)
            repeat_rows = np.tile(symbol_rows, members.size)
            successors[repeat_rows, self.delta[members].ravel()] = True
            successors[repeat_rows, flipped[members].ravel()] = True
            packed = np.packbits(successors, axis=1)
            targets = []
            for s in range(n_symbols):
                key = packed[s].tobytes()
                target = ids.get(key)
                if target is None:
                    target = ids[key] = len(subsets)
                    subsets.append(successors[s])
                targets.append(target)
            _check_cap(len(subsets), state_cap)
            rows.append(targets)
        accepting = np.array([bool(self.accepting[s].any()) for s in subsets])
        return Dfa(np.array(rows, dtype=np.int32), 0, accepting, self.legend)

    def relabel(self, columns: Sequence[int], legend: Any = None) -> "Dfa":
        """Automaton reading new symbol ``i`` as old symbol ``columns[i]``."""
        columns = np.asarray(columns, dtype=np.int64)
        return Dfa(self.delta[:, columns], self.initial, self.accepting, legend)

    def trim(self) -> "Dfa":
        """Drop unreachable states and renumber canonically."""
        order = _bfs_order(self.delta, self.initial)
        mapping = np.full(self.n_states, -1, dtype=np.int64)
        mapping[order] = np.arange(len(order))
        return Dfa(mapping[self.delta[order]], 0, self.accepting[order], self.legend)

    def minimize(self) -> "Dfa":
        """
        Minimal equivalent DFA by Moore partition refinement.

        The refinement signature of a state is its current block plus the
        blocks of all its successors; ``np.unique`` over the signature rows
        yields the next partition.
        """
        dfa = self.trim()
        _, blocks = np.unique(dfa.accepting, return_inverse=True)
        blocks = blocks.reshape(-1)
        count = int(blocks.max()) + 1
        while True:
            signature = np.column_stack([blocks, blocks[dfa.delta]])
            _, refined = np.unique(signature, axis=0, return_inverse=True)
            refined = refined.reshape(-1)
            refined_count = int(refined.max()) + 1
            blocks = refined
            if refined_count == count:
                break
            count = refined_count
        representatives = np.zeros(count, dtype=np.int64)
        representatives[blocks[::-1]] = np.arange(dfa.n_states)[::-1]
        quotient = Dfa(
            blocks[dfa.delta[representatives]],
            int(blocks[dfa.initial]),
            dfa.accepting[representatives],
            self.legend,
        )
        return quotient.trim()

    # ==================== Labeling ====================

    def label_positions(self, word, params: Sequence[int] = ()) -> List[bool]:
        """
        Classify every position of ``word`` with a compiled unary formula.

        Requires a TrackAlphabet legend whose first track is the instance
        variable and whose remaining tracks are the parameters. One forward
        pass computes the states before each position; one backward pass
        maintains the set of states from which the rest of the word accepts.
        """
        legend = self.legend
        if not isinstance(legend, TrackAlphabet) or len(legend.tracks) != 1 + len(params):
            raise ArityMismatch("automaton tracks do not match one instance variable plus the parameters")
        if legend.base != word.alphabet:
            raise AlphabetError(f"automaton alphabet {legend.base} differs from word alphabet {word.alphabet}")
        n = word.n
        width = len(legend.base)
        masks = np.zeros(n, dtype=np.int64)
        for i, position in enumerate(params):
            if not 1 <= position <= n:
                raise PositionOutOfRange(position, n)
            masks[position - 1] |= 1 << (i + 1)
        plain = (word.codes + width * masks).tolist()
        marked = [code + width for code in plain]

        rows = self._rows
        before = [0] * n
        state = self.initial
        for p in range(n):
            before[p] = state
            state = rows[state][plain[p]]

        labels = [False] * n
        accepting_after = self.accepting.copy()
        for p in range(n - 1, -1, -1):
            labels[p] = bool(accepting_after[rows[before[p]][marked[p]]])
            accepting_after = accepting_after[self.delta[:, plain[p]]]
        return labels

    # ==================== Interchange format ====================

    def summary(self) -> Dict[str, Any]:
        return {
            "states": self.n_states,
            "symbols": self.n_symbols,
            "accepting": int(self.accepting.sum()),
            "legend": self.legend.to_header(),
        }

    def to_text(self) -> str:
        """Render the textual interchange table (see docs/formats.md)."""
        lines = [
            _TEXT_MAGIC,
            f"version {_TEXT_VERSION}",
            f"legend {orjson.dumps(self.legend.to_header(), option=orjson.OPT_SORT_KEYS).decode()}",
            f"states {self.n_states}",
            f"symbols {self.n_symbols}",
            f"initial {self.initial}",
            "accepting " + " ".join(str(q) for q in np.flatnonzero(self.accepting)),
        ]
        lines.extend(f"symbol {code} {self.legend.describe(code)}" for code in range(self.n_symbols))
        lines.extend(f"delta {q} " + " ".join(map(str, row)) for q, row in enumerate(self._rows))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Dfa":
        """Parse the textual interchange table."""
        header: Dict[str, Any] = {}
        names: Dict[int, str] = {}
        rows: Dict[int, List[int]] = {}
        accepting: List[int] = []
        fields: Dict[str, int] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(" ")
            try:
                if key == "legend":
                    header = orjson.loads(rest)
                elif key in ("version", "states", "symbols", "initial"):
                    fields[key] = int(rest)
                elif key == "accepting":
                    accepting = [int(q) for q in rest.split()]
                elif key == "symbol":
                    code, _, name = rest.partition(" ")
                    names[int(code)] = name
                elif key == "delta":
                    state, *targets = rest.split()
                    rows[int(state)] = [int(t) for t in targets]
                else:
                    raise ValueError(f"unknown directive {key!r}")
            except (ValueError, orjson.JSONDecodeError) as exc:
                raise ValueError(f"line {number}: {exc}") from None

        if fields.get("version", _TEXT_VERSION) != _TEXT_VERSION:
            raise ValueError(f"unsupported automaton version {fields['version']}")
        n_states, n_symbols = fields["states"], fields["symbols"]
        if sorted(rows) != list(range(n_states)) or any(len(r) != n_symbols for r in rows.values()):
            raise ValueError("transition table is incomplete")
        accepting_vector = np.zeros(n_states, dtype=bool)
        accepting_vector[accepting] = True
        legend = legend_from_header(header, n_symbols, [names.get(i, str(i)) for i in range(n_symbols)])
        return cls(np.array([rows[q] for q in range(n_states)]), fields.get("initial", 0), accepting_vector, legend)


def _bfs_order(delta: np.ndarray, initial: int) -> np.ndarray:
    seen = np.zeros(delta.shape[0], dtype=bool)
    seen[initial] = True
    order = [initial]
    for state in order:
        successors = delta[state]
        fresh = successors[~seen[successors]]
        if fresh.size:
            _, first = np.unique(fresh, return_index=True)
            for target in fresh[np.sort(first)].tolist():
                seen[target] = True
                order.append(target)
    return np.array(order, dtype=np.int64)
