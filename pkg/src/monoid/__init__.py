"""
Finite monoids: the tagged transition monoid M̂ and the power monoid 𝓜.
"""
from .base import FiniteMonoid, GreenStructure, TableMonoid, table_violations
from .power import PowerMonoid, power_monoid
from .tagged import BOTTOM, TaggedMonoid, transition_monoid

__all__ = [
    "FiniteMonoid", "GreenStructure", "TableMonoid", "table_violations",
    "PowerMonoid", "power_monoid", "BOTTOM", "TaggedMonoid", "transition_monoid",
]
