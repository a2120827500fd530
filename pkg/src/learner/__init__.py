"""
Indexed parameter learning for unary MSO formulas.
"""
from .algorithm import QueryStats, check_consistent, learn_parameters
from .index import Index, build_index, build_index_from_dfa, index_word
from .training import Example, TrainingSet

__all__ = [
    "QueryStats", "check_consistent", "learn_parameters",
    "Index", "build_index", "build_index_from_dfa", "index_word", "Example", "TrainingSet",
]
