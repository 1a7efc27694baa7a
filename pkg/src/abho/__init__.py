"""Absolutely homogeneous edge-colored complete graphs: decision procedures,
skeletons, products, classification of isosceles structures, metric
embeddability and group-induced structures."""

from .core import Gec, IncompleteGec, ColorProfile, validate, from_graph, induce
from .morph import Decision, is_ab_ho, automorphisms, isomorphic, canon, canon_struct

__all__ = [
    "Gec", "IncompleteGec", "ColorProfile", "validate", "from_graph", "induce",
    "Decision", "is_ab_ho", "automorphisms", "isomorphic", "canon", "canon_struct",
]
