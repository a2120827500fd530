"""
Finite automata for MSO formulas and for the consistency language L̂(φ).
"""
from .alphabet import (
    CLASS_NAMES, NEGATIVE, POSITIVE, UNKNOWN, AnnotatedAlphabet, OpaqueLegend,
    TrackAlphabet, class_of_label,
)
from .compiler import compile_formula, compile_node, compiled_formula
from .consistency import build_consistency_dfa
from .dfa import Dfa

__all__ = [
    "CLASS_NAMES", "NEGATIVE", "POSITIVE", "UNKNOWN", "AnnotatedAlphabet", "OpaqueLegend",
    "TrackAlphabet", "class_of_label", "compile_formula", "compile_node",
    "compiled_formula", "build_consistency_dfa", "Dfa",
]
