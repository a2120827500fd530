"""
Word structures: strings over a finite alphabet with positions 1..n.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from src.errors import AlphabetError, PositionOutOfRange


def normalize_alphabet(alphabet: Iterable[str]) -> Tuple[str, ...]:
    letters = tuple(alphabet)
    if not letters:
        raise AlphabetError("alphabet must not be empty")
    if len(set(letters)) != len(letters):
        raise AlphabetError(f"alphabet has repeated letters: {letters}")
    for letter in letters:
        if len(letter) != 1 or letter in "?\t\n\r ":
            raise AlphabetError(f"invalid letter {letter!r}: letters are single printable characters")
    return letters


@dataclass(frozen=True, eq=False)
class WordStructure:
    """
    Immutable string B over alphabet Σ.

    ``codes[p - 1]`` is the index in ``alphabet`` of the letter at position p.
    """
    alphabet: Tuple[str, ...]
    codes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alphabet", normalize_alphabet(self.alphabet))
        codes = np.array(self.codes, dtype=np.int32).reshape(-1)
        if codes.size and (codes.min() < 0 or codes.max() >= len(self.alphabet)):
            raise AlphabetError("letter code outside the alphabet")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)

    @classmethod
    def from_text(cls, text: str, alphabet: Sequence[str]) -> "WordStructure":
        """Build from raw symbols, one alphabet letter per character."""
        letters = normalize_alphabet(alphabet)
        lookup = {letter: i for i, letter in enumerate(letters)}
        try:
            codes = np.fromiter((lookup[ch] for ch in text), dtype=np.int32, count=len(text))
        except KeyError as exc:
            raise AlphabetError(f"symbol {exc.args[0]!r} is not in alphabet {letters}") from None
        return cls(letters, codes)

    @classmethod
    def from_symbols(cls, symbols: Iterable[str], alphabet: Sequence[str]) -> "WordStructure":
        """Build from a sequence of letters (e.g. a tokenized file)."""
        return cls.from_text("".join(symbols), alphabet)

    @property
    def n(self) -> int:
        return int(self.codes.size)

    def __len__(self) -> int:
        return self.n

    @property
    def symbols(self) -> str:
        return "".join(self.alphabet[c] for c in self.codes)

    def letter_at(self, position: int) -> str:
        self.check_position(position)
        return self.alphabet[self.codes[position - 1]]

    def check_position(self, position: int) -> None:
        if not 1 <= position <= self.n:
            raise PositionOutOfRange(position, self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WordStructure):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.codes.tobytes()))

    def __repr__(self) -> str:
        preview = self.symbols if self.n <= 40 else self.symbols[:37] + "..."
        return f"WordStructure({preview!r}, n={self.n})"
