"""Tolerance relations and their non-associative convolution algebras."""

__version__ = "0.1.0"

from .algebra import AlgebraElement, associativity_report, involution, star, truncate, unit
from .ext import BACKEND
from .matrix import Tolerance, hs_inner, is_psd, rank
from .relation import (
    FiniteMagma,
    MagmaAction,
    ToleranceRelation,
    connected_components,
    dominant_vertices,
    is_equivalence,
    non_transitive_triple,
    parse_relation,
    relation_from_action,
    relation_from_cover,
    relation_from_proximity,
)

__all__ = [
    "AlgebraElement",
    "BACKEND",
    "FiniteMagma",
    "MagmaAction",
    "Tolerance",
    "ToleranceRelation",
    "associativity_report",
    "connected_components",
    "dominant_vertices",
    "hs_inner",
    "involution",
    "is_equivalence",
    "is_psd",
    "non_transitive_triple",
    "parse_relation",
    "rank",
    "relation_from_action",
    "relation_from_cover",
    "relation_from_proximity",
    "star",
    "truncate",
    "unit",
]
