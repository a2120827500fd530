"""
Exception hierarchy shared by all modules.

"No consistent parameters" and "no consistent hypothesis" are answers, not
failures; learners return ``None`` for them.
"""
from typing import Optional


class SimonLearnError(Exception):
    """Base class for every error raised by this package."""


# ==================== Formula ====================

class FormulaSyntaxError(SimonLearnError):
    """Formula text does not conform to the DSL grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position


class UnboundVariable(SimonLearnError):
    def __init__(self, name: str):
        super().__init__(f"variable '{name}' is neither bound nor declared free")
        self.name = name


class ArityMismatch(SimonLearnError):
    pass


class PositionOutOfRange(SimonLearnError):
    def __init__(self, position: int, n: int):
        super().__init__(f"position {position} outside 1..{n}")
        self.position = position
        self.n = n


class AlphabetError(SimonLearnError):
    """A symbol or letter is not part of the declared alphabet."""


# ==================== Automata and monoids ====================

class StateBlowup(SimonLearnError):
    def __init__(self, states: int, cap: int):
        super().__init__(f"automaton reached {states} states (cap {cap})")
        self.states = states
        self.cap = cap


class MonoidBlowup(SimonLearnError):
    def __init__(self, size: int, cap: int, what: str = "monoid"):
        super().__init__(f"{what} closure exceeded {cap} elements (reached {size})")
        self.size = size
        self.cap = cap


class NoUniqueIdempotent(SimonLearnError):
    pass


# ==================== Factorization trees ====================

class EmptySequence(SimonLearnError):
    pass


class TreeHeightExceeded(SimonLearnError):
    def __init__(self, height: int, bound: int):
        super().__init__(f"tree height {height} exceeds the bound 3|M| = {bound}")
        self.height = height
        self.bound = bound


class RangeOutOfBounds(SimonLearnError):
    def __init__(self, i: int, j: int, n: Optional[int] = None):
        bound = f" of 1..{n}" if n is not None else ""
        super().__init__(f"range [{i}..{j}] is not a nonempty subrange{bound}")
        self.i = i
        self.j = j


# ==================== Learning and corpus ====================

class ContradictoryLabels(SimonLearnError):
    def __init__(self, position):
        super().__init__(f"instance {position} carries both labels")
        self.position = position


class NotEnoughInstances(SimonLearnError):
    def __init__(self, requested: int, available: int):
        super().__init__(f"requested {requested} instances, only {available} exist")
        self.requested = requested
        self.available = available


class InvalidSpec(SimonLearnError):
    pass


# ==================== Persistence ====================

class IndexFormatError(SimonLearnError):
    pass


class VersionMismatch(IndexFormatError):
    pass


class ChecksumMismatch(IndexFormatError):
    pass
