"""
Finite monoid interface.

Factorization trees only need multiplication, idempotency, and the Green
classes (R, L, J) of the elements they meet; everything else is specific to
the tagged and power monoids.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from src.errors import MonoidBlowup


@dataclass(frozen=True)
class GreenStructure:
    """R-, L- and J-class id of every element."""
    r_class: np.ndarray
    l_class: np.ndarray
    j_class: np.ndarray

    @property
    def j_count(self) -> int:
        return int(self.j_class.max()) + 1 if self.j_class.size else 0


def _strong_components(size: int, sources: np.ndarray, targets: np.ndarray) -> np.ndarray:
    graph = csr_matrix((np.ones(sources.size, dtype=np.int8), (sources, targets)), shape=(size, size))
    _, labels = connected_components(graph, directed=True, connection="strong")
    return labels


class FiniteMonoid(ABC):
    """
    Abstract finite monoid with elements 0..size-1.

    Implementations must be generated by ``generators``: every element is a
    product of generators. Green classes are then the strongly connected
    components of the Cayley graphs.
    """

    @property
    @abstractmethod
    def size(self) -> int:
        pass

    @property
    @abstractmethod
    def identity(self) -> int:
        pass

    @property
    @abstractmethod
    def generators(self) -> Sequence[int]:
        pass

    @abstractmethod
    def mul(self, a: int, b: int) -> int:
        """Product a·b."""
        pass

    def is_idempotent(self, a: int) -> bool:
        return self.mul(a, a) == a

    def product(self, elements: Iterable[int]) -> int:
        """Left-to-right product; the identity for an empty sequence."""
        result = self.identity
        for element in elements:
            result = self.mul(result, element)
        return result

    @cached_property
    def green(self) -> GreenStructure:
        """
        Green classes from the right and left Cayley graphs.

        a R b iff each is reachable from the other by right multiplication
        with generators; L likewise on the left; J uses both edge kinds.
        """
        gens = list(self.generators)
        size = self.size
        sources = np.repeat(np.arange(size), len(gens))
        right = np.array([self.mul(a, g) for a in range(size) for g in gens], dtype=np.int64)
        left = np.array([self.mul(g, a) for a in range(size) for g in gens], dtype=np.int64)
        return GreenStructure(
            r_class=_strong_components(size, sources, right),
            l_class=_strong_components(size, sources, left),
            j_class=_strong_components(size, np.concatenate([sources, sources]), np.concatenate([right, left])),
        )

    def full_table(self) -> np.ndarray:
        """Dense multiplication table (size × size)."""
        return np.array([[self.mul(a, b) for b in range(self.size)] for a in range(self.size)], dtype=np.int64)


def table_violations(table: np.ndarray, identity: int, limit: int = 200) -> List[str]:
    """
    Check monoid laws on a dense table.

    Associativity is checked exhaustively when the table has at most
    ``limit`` elements.
    """
    problems = []
    size = table.shape[0]
    ids = np.arange(size)
    if not (np.array_equal(table[identity], ids) and np.array_equal(table[:, identity], ids)):
        problems.append(f"element {identity} is not a two-sided identity")
    if size <= limit:
        # left[a, b, c] = (a·b)·c and right[a, b, c] = a·(b·c)
        left = table[table[:, :, None], ids[None, None, :]]
        right = table[ids[:, None, None], table[None, :, :]]
        bad = np.argwhere(left != right)
        if bad.size:
            a, b, c = bad[0]
            problems.append(f"associativity fails for ({a}, {b}, {c})")
    return problems


class TableMonoid(FiniteMonoid):
    """
    Monoid given by an explicit multiplication table.

    Args:
        table: size × size array, table[a, b] = a·b
        identity: Index of the identity
        generators: Generating elements (default: all elements)
    """

    def __init__(self, table: np.ndarray, identity: int = 0, generators: Optional[Sequence[int]] = None):
        self.table = np.array(table, dtype=np.int64)
        self.table.setflags(write=False)
        self._identity = int(identity)
        self._generators = tuple(range(self.table.shape[0])) if generators is None else tuple(generators)
        self._rows = self.table.tolist()

    @classmethod
    def from_transformations(cls, maps: Sequence[Sequence[int]], cap: int = 100_000) -> "TableMonoid":
        """
        Transformation monoid generated by maps on {0..q-1}.

        Elements are numbered in breadth-first discovery order from the
        identity; the product a·b applies a first, then b.
        """
        generators = np.array(maps, dtype=np.int32)
        q = generators.shape[1]
        elements: List[np.ndarray] = [np.arange(q, dtype=np.int32)]
        index: Dict[bytes, int] = {elements[0].tobytes(): 0}
        for current in elements:
            for g in generators:
                composed = g[current]
                key = composed.tobytes()
                if key not in index:
                    index[key] = len(elements)
                    elements.append(composed)
                    if len(elements) > cap:
                        raise MonoidBlowup(len(elements), cap)
        stacked = np.stack(elements)
        table = np.empty((len(elements), len(elements)), dtype=np.int64)
        for a, current in enumerate(elements):
            composed = np.ascontiguousarray(stacked[:, current])
            table[a] = [index[row.tobytes()] for row in composed]
        gen_ids = sorted({index[g.tobytes()] for g in generators})
        return cls(table, 0, gen_ids)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return self._identity

    @property
    def generators(self) -> Sequence[int]:
        return self._generators

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def full_table(self) -> np.ndarray:
        return self.table
