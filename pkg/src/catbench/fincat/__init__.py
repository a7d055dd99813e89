"""Finite-category engine: categories, functor laws, limits and colimits."""

from .core import (
    DirectedMultigraph,
    Edge,
    Elem,
    FinCategory,
    FinSetCategory,
    FreeCategory,
    Morphism,
    SetMap,
    ThinCategory,
    compose,
    compose_set_maps,
    free_category,
    hom_set,
    identity,
)
from .diagrams import (
    NO_COLIMIT,
    Cocone,
    Cone,
    Diagram,
    Infeasible,
    NoColimit,
    UnionFind,
    colimit,
    consistent_tuples,
    cospan,
    limit,
    lub_thin,
    pullback,
    verify_universal_property,
)
from .functors import FunctorRep, LawReport, check_functor_laws, identity_functor

__all__ = [
    "DirectedMultigraph",
    "Edge",
    "Elem",
    "FinCategory",
    "FinSetCategory",
    "FreeCategory",
    "Morphism",
    "SetMap",
    "ThinCategory",
    "compose",
    "compose_set_maps",
    "free_category",
    "hom_set",
    "identity",
    "NO_COLIMIT",
    "Cocone",
    "Cone",
    "Diagram",
    "Infeasible",
    "NoColimit",
    "UnionFind",
    "colimit",
    "consistent_tuples",
    "cospan",
    "limit",
    "lub_thin",
    "pullback",
    "verify_universal_property",
    "FunctorRep",
    "LawReport",
    "check_functor_laws",
    "identity_functor",
]
