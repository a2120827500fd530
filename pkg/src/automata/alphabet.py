"""
Integer encodings of extended alphabets.

Two layouts are used:

* ``TrackAlphabet`` - Σ × {0,1}^V, code = a + |Σ|·mask, bit i of mask marks
  variable track i. Compiled formula automata read these symbols.
* ``AnnotatedAlphabet`` - Σ̂ = Σ × 2^{y1..yl} × {?,0,1},
  code = a + |Σ|·(K + 2^l·c) with K the parameter bit mask and c the
  classification (? = 0, 0 = 1, 1 = 2). Γ = Σ × {?,0,1} uses a + |Σ|·c, and
  ``f`` drops the parameter component.
"""
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.errors import AlphabetError, PositionOutOfRange

UNKNOWN = 0
NEGATIVE = 1
POSITIVE = 2
CLASS_NAMES = ("?", "0", "1")


def class_of_label(label: int) -> int:
    """Classification component for a training label 0/1."""
    return POSITIVE if label else NEGATIVE


@dataclass(frozen=True)
class TrackAlphabet:
    base: Tuple[str, ...]
    tracks: Tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return len(self.base) << len(self.tracks)

    def encode(self, letter: int, marked: Iterable[str] = ()) -> int:
        mask = 0
        for name in marked:
            mask |= 1 << self.tracks.index(name)
        return letter + len(self.base) * mask

    def decode(self, code: int) -> Tuple[int, FrozenSet[str]]:
        letter, mask = code % len(self.base), code // len(self.base)
        return letter, frozenset(t for i, t in enumerate(self.tracks) if mask >> i & 1)

    def describe(self, code: int) -> str:
        letter, marked = self.decode(code)
        return f"{self.base[letter]}|{','.join(t for t in self.tracks if t in marked)}"

    def to_header(self) -> Dict[str, Any]:
        return {"kind": "tracks", "alphabet": list(self.base), "tracks": list(self.tracks)}


@dataclass(frozen=True)
class AnnotatedAlphabet:
    """Σ̂ for a base alphabet and parameter list, with its projection onto Γ."""
    sigma: Tuple[str, ...]
    params: Tuple[str, ...] = ()

    @property
    def ell(self) -> int:
        return len(self.params)

    @property
    def size(self) -> int:
        return len(self.sigma) * (1 << self.ell) * 3

    @property
    def gamma_size(self) -> int:
        return len(self.sigma) * 3

    def encode(self, letter: int, params_mask: int = 0, klass: int = UNKNOWN) -> int:
        return letter + len(self.sigma) * (params_mask + (klass << self.ell))

    def decode(self, code: int) -> Tuple[int, int, int]:
        """Return (letter index, parameter mask, classification)."""
        letter, rest = code % len(self.sigma), code // len(self.sigma)
        return letter, rest & ((1 << self.ell) - 1), rest >> self.ell

    def gamma_encode(self, letter: int, klass: int = UNKNOWN) -> int:
        return letter + len(self.sigma) * klass

    def gamma_decode(self, gamma: int) -> Tuple[int, int]:
        return gamma % len(self.sigma), gamma // len(self.sigma)

    def project(self, code: int) -> int:
        """f: Σ̂ → Γ, forget the parameter component."""
        letter, _, klass = self.decode(code)
        return self.gamma_encode(letter, klass)

    def describe(self, code: int) -> str:
        letter, mask, klass = self.decode(code)
        names = ",".join(p for i, p in enumerate(self.params) if mask >> i & 1)
        return f"{self.sigma[letter]}|{names}|{CLASS_NAMES[klass]}"

    def describe_gamma(self, gamma: int) -> str:
        letter, klass = self.gamma_decode(gamma)
        return f"{self.sigma[letter]}|{CLASS_NAMES[klass]}"

    def to_header(self) -> Dict[str, Any]:
        return {"kind": "annotated", "alphabet": list(self.sigma), "params": list(self.params)}

    def encode_word(
        self,
        letters: np.ndarray,
        params: Sequence[int] = (),
        classes: Optional[Mapping[int, int]] = None,
    ) -> np.ndarray:
        """
        Encode B̂ from letter codes, parameter positions and classified positions.

        Args:
            letters: Letter index per position (position p at index p-1)
            params: Position of each parameter y1..yl
            classes: Position -> classification component (NEGATIVE/POSITIVE)

        Returns:
            int64 array of Σ̂ codes
        """
        n = len(letters)
        masks = np.zeros(n, dtype=np.int64)
        for i, position in enumerate(params):
            if not 1 <= position <= n:
                raise PositionOutOfRange(position, n)
            masks[position - 1] |= 1 << i
        klass = np.zeros(n, dtype=np.int64)
        for position, value in (classes or {}).items():
            if not 1 <= position <= n:
                raise PositionOutOfRange(position, n)
            klass[position - 1] = value
        return np.asarray(letters, dtype=np.int64) + len(self.sigma) * (masks + (klass << self.ell))


@dataclass(frozen=True)
class OpaqueLegend:
    """Legend for automata loaded without alphabet information."""
    size: int
    names: Tuple[str, ...] = ()

    def describe(self, code: int) -> str:
        return self.names[code] if code < len(self.names) else str(code)

    def to_header(self) -> Dict[str, Any]:
        return {"kind": "opaque", "size": self.size}


def legend_from_header(header: Mapping[str, Any], size: int, names: Sequence[str] = ()):
    kind = header.get("kind", "opaque")
    if kind == "tracks":
        legend = TrackAlphabet(tuple(header["alphabet"]), tuple(header.get("tracks", ())))
    elif kind == "annotated":
        legend = AnnotatedAlphabet(tuple(header["alphabet"]), tuple(header.get("params", ())))
    elif kind == "opaque":
        return OpaqueLegend(size, tuple(names))
    else:
        raise AlphabetError(f"Unsupported legend kind: {kind}")
    if legend.size != size:
        raise AlphabetError(f"legend describes {legend.size} symbols, table has {size}")
    return legend
