"""
Structure Algebra
=================

Induced substructures, disjoint unions and relabelings.
"""

from typing import Iterable, Mapping

from embq.core.models import Structure
from embq.shared.exceptions import VocabularyMismatchException


def induced_substructure(structure: Structure, subset: Iterable[str]) -> Structure:
    """
    Restrict a structure to a subset of its universe.

    The induced universe keeps the order of the parent universe.

    Raises:
        NotFoundException: If an element of ``subset`` is not in the universe
    """
    subset = set(subset)
    structure.require_elements(subset)
    universe = tuple(e for e in structure.universe if e in subset)
    relations = tuple(
        frozenset(t for t in tuples if all(e in subset for e in t))
        for tuples in structure.relations
    )
    return Structure(structure.vocab, universe, relations)


def disjoint_union(left: Structure, right: Structure) -> Structure:
    """
    Tagged disjoint union: elements become ``0.<a>`` and ``1.<b>``.

    Raises:
        VocabularyMismatchException: If the vocabularies differ
    """
    if left.vocab != right.vocab:
        raise VocabularyMismatchException(
            f"Cannot unite structures over {left.vocab} and {right.vocab}"
        )
    universe = tuple(f"0.{e}" for e in left.universe) + tuple(f"1.{e}" for e in right.universe)
    relations = tuple(
        frozenset(tuple(f"0.{e}" for e in t) for t in a) | frozenset(tuple(f"1.{e}" for e in t) for t in b)
        for a, b in zip(left.relations, right.relations)
    )
    return Structure(left.vocab, universe, relations)


def relabel(structure: Structure, mapping: Mapping[str, str]) -> Structure:
    """Rename elements through an injective map defined on the whole universe."""
    universe = tuple(mapping[e] for e in structure.universe)
    relations = tuple(
        frozenset(tuple(mapping[e] for e in t) for t in tuples)
        for tuples in structure.relations
    )
    return Structure(structure.vocab, universe, relations)


def reorder(structure: Structure, order: Iterable[str]) -> Structure:
    """Same structure with the universe listed in ``order``."""
    order = tuple(order)
    structure.require_elements(order)
    return Structure(structure.vocab, order, structure.relations)
