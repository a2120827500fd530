"""
Training sets: labeled instances of a word structure.
"""
from typing import Dict, Iterable, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.errors import ArityMismatch, ContradictoryLabels, PositionOutOfRange

Instance = Tuple[int, ...]


class Example(BaseModel):
    """One labeled instance (u, λ)."""
    model_config = ConfigDict(frozen=True)

    instance: Instance
    label: int = Field(ge=0, le=1)

    @field_validator("instance", mode="before")
    @classmethod
    def wrap_position(cls, value):
        """A bare position is a unary instance."""
        if not hasattr(value, "__iter__"):
            return (int(value),)
        return tuple(int(p) for p in value)


class TrainingSet(BaseModel):
    """
    Training set T ⊆ U(B)^k × {0,1}.

    Repeated examples with the same label collapse to one; an instance with
    both labels raises ContradictoryLabels. All instances share one arity.
    """
    examples: List[Example] = Field(default_factory=list)

    @model_validator(mode="after")
    def collapse_duplicates(self) -> "TrainingSet":
        seen: Dict[Instance, int] = {}
        unique: List[Example] = []
        for example in self.examples:
            previous = seen.get(example.instance)
            if previous is None:
                seen[example.instance] = example.label
                unique.append(example)
            elif previous != example.label:
                raise ContradictoryLabels(example.instance[0] if len(example.instance) == 1 else example.instance)
        if len({len(e.instance) for e in unique}) > 1:
            raise ArityMismatch("training instances have different arities")
        self.examples = unique
        return self

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Union[int, Instance], int]]) -> "TrainingSet":
        return cls(examples=[Example(instance=instance, label=label) for instance, label in pairs])

    @classmethod
    def from_tsv(cls, text: str) -> "TrainingSet":
        """
        Parse ``position<TAB>label`` lines.

        k-ary instances list their positions separated by commas. Blank lines
        and ``#`` comments are skipped.
        """
        pairs = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 2 or fields[1] not in ("0", "1"):
                raise ValueError(f"training line {number}: expected 'position<TAB>label', got {raw!r}")
            try:
                instance = tuple(int(p) for p in fields[0].split(","))
            except ValueError:
                raise ValueError(f"training line {number}: bad position {fields[0]!r}") from None
            pairs.append((instance, int(fields[1])))
        return cls.from_pairs(pairs)

    def to_tsv(self) -> str:
        return "".join(
            f"{','.join(map(str, e.instance))}\t{e.label}\n" for e in self.examples
        )

    @property
    def arity(self) -> int:
        return len(self.examples[0].instance) if self.examples else 1

    def __len__(self) -> int:
        return len(self.examples)

    def positions(self) -> List[int]:
        """Every position mentioned by some instance, sorted."""
        return sorted({p for e in self.examples for p in e.instance})

    def pairs(self) -> List[Tuple[Instance, int]]:
        return [(e.instance, e.label) for e in self.examples]

    def unary(self) -> Dict[int, int]:
        """Position -> label for a unary training set."""
        if self.examples and self.arity != 1:
            raise ArityMismatch(f"expected a unary training set, got arity {self.arity}")
        return {e.instance[0]: e.label for e in self.examples}

    def check_range(self, n: int) -> None:
        for e in self.examples:
            for position in e.instance:
                if not 1 <= position <= n:
                    raise PositionOutOfRange(position, n)
