"""Retractions, point-by-point evolutions and inverse towers of finite reflexive graphs."""

from .graph import Graph, GraphError, make_graph, from_labeled_edges
from .morphisms import Morphism, MorphismError, classify
from .evolutions import (Evolution, SentinelChain, Transition, is_ppr, is_sociable,
                         ppr_witness, sociable_witness)
from .fraisse import evolution_level, evolution_lift, projective_level, projective_lift
from .towers import InverseSystem, Thread, validate_system

__version__ = "0.1.0"

__all__ = [
    "Evolution", "Graph", "GraphError", "InverseSystem", "Morphism", "MorphismError",
    "SentinelChain", "Thread", "Transition", "classify", "evolution_level", "evolution_lift",
    "from_labeled_edges", "is_ppr", "is_sociable", "make_graph", "ppr_witness",
    "projective_level", "projective_lift", "sociable_witness", "validate_system",
]
