"""
The power monoid 𝓜 of reachable subsets of M̂.

h(γ) collects ĥ(a, K, c) over every parameter subset K, so h(A) is the set
of ĥ(B̂) over all annotated words B̂ that project to A. Only subsets reachable
from h(Γ) are materialized.
"""
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.config import settings
from src.errors import MonoidBlowup, NoUniqueIdempotent
from src.monoid.base import FiniteMonoid
from src.monoid.tagged import TaggedMonoid


class PowerMonoid(FiniteMonoid):
    """
    𝓜 with its morphism h: Γ → 𝓜.

    Elements are sorted int32 arrays of M̂ indices; element 0 is {1_M̂}.
    Products are memoized; concurrent readers may race on the memo, which
    only ever receives identical values.
    """

    def __init__(self, mhat: TaggedMonoid, elements: List[np.ndarray], symbols: np.ndarray, memo: Dict[int, int]):
        self.mhat = mhat
        self._elements = elements
        for members in elements:
            members.setflags(write=False)
        self._index: Dict[bytes, int] = {members.tobytes(): i for i, members in enumerate(elements)}
        self.symbols = symbols
        self.symbols.setflags(write=False)
        self._memo = memo
        self._generators = tuple(sorted(set(symbols.tolist())))
        self.idempotent = np.array([self.mul(i, i) == i for i in range(len(elements))], dtype=bool)
        self.idempotent.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self._elements)

    @property
    def identity(self) -> int:
        return 0

    @property
    def generators(self) -> Sequence[int]:
        return self._generators

    def members(self, s: int) -> np.ndarray:
        """M̂ elements of ``s`` in increasing order."""
        return self._elements[s]

    def lookup(self, members: np.ndarray) -> int:
        """Index of the element with exactly these members."""
        return self._index[np.asarray(members, dtype=np.int32).tobytes()]

    def mul(self, a: int, b: int) -> int:
        key = a * len(self._elements) + b
        result = self._memo.get(key)
        if result is None:
            table = self.mhat.table
            block = table[np.ix_(self._elements[a], self._elements[b])]
            result = self._index[np.unique(block).astype(np.int32).tobytes()]
            self._memo[key] = result
        return result

    def is_idempotent(self, a: int) -> bool:
        return bool(self.idempotent[a])

    def symbol_element(self, gamma: int) -> int:
        """h(γ) for a Γ code."""
        return int(self.symbols[gamma])

    def evaluate(self, word: Sequence[int]) -> int:
        """h of a Γ word."""
        return self.product(self.symbols[np.asarray(word, dtype=np.int64)].tolist())

    def accepting_members(self, s: int) -> np.ndarray:
        """Members of ``s`` in F̂."""
        members = self._elements[s]
        return members[self.mhat.accepting[members]]

    # ==================== Decomposition ====================

    def decompose(self, s1: int, s2: int, m: int) -> Optional[Tuple[int, int]]:
        """
        Smallest (m1, m2) with m1 ∈ s1, m2 ∈ s2 and m1·m2 = m.

        Pairs are ordered by m1 first, then m2.
        """
        left, right = self._elements[s1], self._elements[s2]
        hits = np.argwhere(self.mhat.table[np.ix_(left, right)] == m)
        if not hits.size:
            return None
        i, j = hits[0]
        return int(left[i]), int(right[j])

    def decompose_around(self, s: int, e: int, m: int) -> Optional[Tuple[int, int]]:
        """Smallest (m1, m2) with m1, m2 ∈ s and m1·e·m2 = m."""
        members = self._elements[s]
        table = self.mhat.table
        hits = np.argwhere(table[np.ix_(table[members, e], members)] == m)
        if not hits.size:
            return None
        i, j = hits[0]
        return int(members[i]), int(members[j])

    def idempotent_of_empty_class(self, s: int) -> int:
        """
        The unique ∅-tagged idempotent of an idempotent node label.

        Raises:
            NoUniqueIdempotent: ``s`` has no ∅-tagged member, several, or a
                non-idempotent one
        """
        members = self._elements[s]
        empty = members[self.mhat.tags[members] == 0]
        if empty.size != 1:
            raise NoUniqueIdempotent(f"element {s} has {empty.size} members tagged with the empty set")
        e = int(empty[0])
        if not self.mhat.is_idempotent(e):
            raise NoUniqueIdempotent(f"the empty-tagged member {e} of element {s} is not idempotent")
        return e

    def dump(self) -> Dict[str, Any]:
        return {
            "elements": [members.tolist() for members in self._elements],
            "symbols": self.symbols.tolist(),
            "idempotent": np.flatnonzero(self.idempotent).tolist(),
        }


def power_monoid(mhat: TaggedMonoid, cap: Optional[int] = None) -> PowerMonoid:
    """
    Build 𝓜 over Γ from M̂.

    Args:
        mhat: Tagged monoid over Σ̂; Γ is its alphabet without parameters
        cap: MonoidBlowup threshold (default settings.power_monoid_cap)

    Raises:
        MonoidBlowup: More reachable subsets than the cap
    """
    cap = settings.power_monoid_cap if cap is None else cap
    alphabet = mhat.alphabet
    width = len(alphabet.sigma)
    gamma_codes = np.arange(alphabet.gamma_size)
    letters, classes = gamma_codes % width, gamma_codes // width
    masks = np.arange(1 << alphabet.ell)
    # codes[γ, K] = (a, K, c)
    codes = letters[:, None] + width * (masks[None, :] + (classes[:, None] << alphabet.ell))
    symbol_sets = [np.unique(mhat.hhat[row]).astype(np.int32) for row in codes]

    elements: List[np.ndarray] = [np.array([mhat.identity], dtype=np.int32)]
    index: Dict[bytes, int] = {elements[0].tobytes(): 0}
    generators: List[int] = []
    for members in symbol_sets:
        key = members.tobytes()
        if key not in index:
            index[key] = len(elements)
            elements.append(members)
        generators.append(index[key])
    distinct = sorted(set(generators))

    memo: Dict[int, int] = {}
    products: List[Tuple[int, int, int]] = []
    table = mhat.table
    position = 0
    while position < len(elements):
        current = elements[position]
        for g in distinct:
            block = table[np.ix_(current, elements[g])]
            members = np.unique(block).astype(np.int32)
            key = members.tobytes()
            target = index.get(key)
            if target is None:
                target = index[key] = len(elements)
                elements.append(members)
                if len(elements) > cap:
                    raise MonoidBlowup(len(elements), cap, "power monoid")
            products.append((position, g, target))
        position += 1

    size = len(elements)
    for a, b, target in products:
        memo[a * size + b] = target
    power = PowerMonoid(mhat, elements, np.array(generators, dtype=np.int64), memo)
    logger.info(f"power monoid: {size} elements, {int(power.idempotent.sum())} idempotent")
    return power
