"""
Homomorphism Reduction
======================

The transform that turns embeddability into homomorphism existence: each
relation gets a complement symbol ``<R>_star`` and a fresh binary ``N`` holds
of distinct pairs. A homomorphism ``F(G) -> F(A)`` must then be injective and
reflect every relation, so it is exactly an embedding ``G -> A``.
"""

import logging
from itertools import product
from typing import Sequence

from embq.core.models import Structure, Vocabulary
from embq.morphism.engine import find_morphism
from embq.morphism.models import MorphismKind, MorphismQuery
from embq.shared.exceptions import VocabularyMismatchException

logger = logging.getLogger(__name__)

INEQUALITY = "N"


def complement_symbol(name: str) -> str:
    return f"{name}_star"


def transformed_vocabulary(vocab: Vocabulary) -> Vocabulary:
    """τ followed by one complement symbol per relation and ``N``."""
    extra = {complement_symbol(name): arity for name, arity in vocab}
    extra[INEQUALITY] = 2
    return vocab.extend(extra)


def f_transform(structure: Structure) -> Structure:
    """
    Expand a structure with relation complements and the inequality relation.

    Raises:
        VocabularyMismatchException: If a complement symbol or ``N`` is already in use
    """
    vocab = transformed_vocabulary(structure.vocab)
    complements = tuple(
        frozenset(t for t in product(structure.universe, repeat=arity) if t not in tuples)
        for (_, arity), tuples in zip(structure.vocab, structure.relations)
    )
    inequality = frozenset(
        (a, b) for a in structure.universe for b in structure.universe if a != b
    )
    return Structure(vocab, structure.universe, structure.relations + complements + (inequality,))


def hom_closure_member(generators: Sequence[Structure], structure: Structure) -> bool:
    """
    Decide whether some transformed generator maps homomorphically into ``structure``.

    Args:
        generators: Structures over τ
        structure: Structure over the transformed vocabulary of τ

    Raises:
        VocabularyMismatchException: If ``structure`` is not over the transformed vocabulary
    """
    for generator in generators:
        transformed = f_transform(generator)
        if transformed.vocab != structure.vocab:
            raise VocabularyMismatchException(
                f"Expected a structure over {transformed.vocab}, got {structure.vocab}"
            )
        query = MorphismQuery.build(MorphismKind.HOMOMORPHISM, transformed, structure)
        if find_morphism(query) is not None:
            return True
    return False
