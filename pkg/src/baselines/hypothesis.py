"""
Hypotheses returned by the baseline learners.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Sequence, Tuple

from pydantic import BaseModel, Field

from src.formula.ast import FormulaAST
from src.formula.parser import parse_formula
from src.formula.semantics import eval_semantic
from src.formula.word import WordStructure


class Hypothesis(BaseModel):
    """A formula in DSL text together with its parameter positions."""
    formula_text: str
    params: Tuple[int, ...] = ()
    learner: str
    iterations: int = Field(default=0, description="Inner-loop steps spent by the learner")

    @cached_property
    def formula(self) -> FormulaAST:
        return parse_formula(self.formula_text)

    def classify(self, word: WordStructure, instance: Sequence[int]) -> bool:
        """Truth of the hypothesis at one instance tuple (reference semantics)."""
        if isinstance(instance, int):
            instance = (instance,)
        return eval_semantic(self.formula, word, tuple(instance), self.params)

    def consistent_with(self, word: WordStructure, pairs) -> bool:
        """Check every (instance, label) pair with the reference semantics."""
        return all(self.classify(word, instance) == bool(label) for instance, label in pairs)

    def record(self) -> Dict[str, Any]:
        """Parameter record: DSL text plus named parameter positions."""
        formula = self.formula
        return {
            "learner": self.learner,
            "formula": self.formula_text,
            "params": {name: position for name, position in zip(formula.param_vars, self.params)},
            "iterations": self.iterations,
        }


@dataclass(frozen=True)
class QfClass:
    """Quantifier-free formulas φ(x; y1..yl) over an alphabet."""
    ell: int
    alphabet: Tuple[str, ...]


def header(instance: Sequence[str], params: Sequence[str], alphabet: Sequence[str]) -> str:
    return f"instance: {','.join(instance)}; params: {','.join(params)}; alphabet: {','.join(alphabet)}"


def disjunction(disjuncts: Sequence[str], instance_var: str = "x") -> str:
    """DSL text of a disjunction; the empty disjunction is constant false."""
    if not disjuncts:
        return f"!({instance_var} = {instance_var})"
    if len(disjuncts) == 1:
        return disjuncts[0]
    return " | ".join(f"({d})" for d in disjuncts)
