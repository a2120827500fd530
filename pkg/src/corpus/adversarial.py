"""
The adversarial string family for sublinear learners.

B_i = (A_b A_c)^i A_b (A_b A_c)^(l+1-i) with A_b = (b a^(2r+1))^(3·s!) and
A_c = (c a^(2r+1))^(3·s!). One training position sits in the middle of each
A block, deep inside a run of a's; labels alternate starting with 1. A
learner that only looks at positions near the training set sees the same
thing on every B_i, yet the consistent parameters differ.
"""
from math import factorial
from typing import List, NamedTuple, Tuple

from pydantic import BaseModel, model_validator

from src.errors import InvalidSpec
from src.formula.word import WordStructure
from src.learner.training import TrainingSet

ADVERSARIAL_ALPHABET = ("a", "b", "c")

# x is an a-position whose nearest non-a letter to the left is a b before y1
# or a c at or after y1.
ADVERSARIAL_FORMULA = (
    "instance: x; params: y1; alphabet: a,b,c\n"
    "Ra(x) & exists z. (z < x & ((Rb(z) & z < y1) | (Rc(z) & y1 <= z)) "
    "& forall w. ((z < w & w < x) -> Ra(w)))\n"
)


class Generated(NamedTuple):
    """A word, the parameters it was generated for, and a training set."""
    word: WordStructure
    params: Tuple[int, ...]
    training: TrainingSet


class AdversarialSpec(BaseModel):
    """Parameters of one member B_i of the family."""
    ell: int = 1
    s: int = 2
    r: int = 1
    i: int = 0

    @model_validator(mode="after")
    def check_ranges(self) -> "AdversarialSpec":
        if self.ell < 0:
            raise InvalidSpec(f"ell must be non-negative, got {self.ell}")
        if self.s < 2:
            raise InvalidSpec(f"s must be at least 2, got {self.s}")
        if self.r < 1:
            raise InvalidSpec(f"r must be at least 1, got {self.r}")
        if not 0 <= self.i <= self.ell + 1:
            raise InvalidSpec(f"block index must lie in 0..{self.ell + 1}, got {self.i}")
        return self

    @property
    def repeats(self) -> int:
        return 3 * factorial(self.s)

    @property
    def block_length(self) -> int:
        """|A_b| = |A_c| = (2r+2)·3·s!"""
        return (2 * self.r + 2) * self.repeats

    @property
    def n(self) -> int:
        return (2 * self.ell + 3) * self.block_length

    def training_positions(self) -> List[int]:
        half = self.block_length // 2
        return [self.block_length * j + half + self.r + 2 for j in range(2 * self.ell + 3)]

    def parameter(self) -> int:
        """
        First b of the second of the two successive A_b blocks.

        B_(l+1) ends with its only lone A_b; there the parameter is the last
        position, after every b.
        """
        if self.i == self.ell + 1:
            return self.n
        return (2 * self.i + 1) * self.block_length + 1


def block(letter: str, spec: AdversarialSpec) -> str:
    return (letter + "a" * (2 * spec.r + 1)) * spec.repeats


def gen_adversarial(spec: AdversarialSpec) -> Generated:
    """
    Build B_i, its canonical parameter v_i and the shared training set.

    Raises:
        InvalidSpec: Parameters outside s >= 2, r >= 1, 0 <= i <= l+1
    """
    a_b, a_c = block("b", spec), block("c", spec)
    text = (a_b + a_c) * spec.i + a_b + (a_b + a_c) * (spec.ell + 1 - spec.i)
    word = WordStructure.from_text(text, ADVERSARIAL_ALPHABET)
    training = TrainingSet.from_pairs(
        (position, 1 - j % 2) for j, position in enumerate(spec.training_positions())
    )
    return Generated(word, (spec.parameter(),), training)


def gen_all_blocks(ell: int = 1, s: int = 2, r: int = 1) -> List[Generated]:
    """Every member B_0..B_(l+1) of the family."""
    return [gen_adversarial(AdversarialSpec(ell=ell, s=s, r=r, i=i)) for i in range(ell + 2)]
