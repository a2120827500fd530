"""
Baseline learners and the brute-force oracle.
"""
from .existential import LetterIndex, exist_learn_unary, interval_formula
from .hypothesis import Hypothesis, QfClass
from .oracle import (
    class_oracle_exist_unary, class_oracle_qf, consistent_parameters, iter_consistent,
    oracle_learn, order_type,
)
from .quantifier_free import emit_dnf, qf_learn_general, qf_learn_unary

__all__ = [
    "LetterIndex", "exist_learn_unary", "interval_formula", "Hypothesis", "QfClass",
    "class_oracle_exist_unary", "class_oracle_qf", "consistent_parameters", "iter_consistent",
    "oracle_learn", "order_type", "emit_dnf", "qf_learn_general", "qf_learn_unary",
]
