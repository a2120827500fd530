"""
MSO formulas over words: syntax, parsing and reference semantics.
"""
from .ast import (
    And, Equal, Exists, ExistsSet, Forall, ForallSet, FormulaAST, Implies, Label,
    Less, LessEq, Member, Node, Not, Or, free_variables, quantifier_rank, to_dsl,
)
from .parser import parse_formula
from .semantics import eval_semantic, label_by_hypothesis
from .word import WordStructure

__all__ = [
    "And", "Equal", "Exists", "ExistsSet", "Forall", "ForallSet", "FormulaAST",
    "Implies", "Label", "Less", "LessEq", "Member", "Node", "Not", "Or",
    "free_variables", "quantifier_rank", "to_dsl",
    "parse_formula", "eval_semantic", "label_by_hypothesis", "WordStructure",
]
