from embq.core.algebra import disjoint_union, induced_substructure, relabel, reorder
from embq.core.canonical import canonical_form, canonical_structure, enumerate_structures
from embq.core.catalog import catalog_generate
from embq.core.models import AtomicType, Structure, TypeDisjunction, Vocabulary
from embq.core.types import (
    atomic_type,
    enumerate_atomic_types,
    qf_to_type_disjunction,
    type_formula,
)

__all__ = [
    "AtomicType",
    "Structure",
    "TypeDisjunction",
    "Vocabulary",
    "atomic_type",
    "canonical_form",
    "canonical_structure",
    "catalog_generate",
    "disjoint_union",
    "enumerate_atomic_types",
    "enumerate_structures",
    "induced_substructure",
    "qf_to_type_disjunction",
    "relabel",
    "reorder",
    "type_formula",
]
