"""
Quantifier Semantics
====================

Membership tests for every quantifier kind and the registry formulas are
parsed against.
"""

import logging
from itertools import combinations, product
from typing import Dict, Iterable, Iterator, Mapping, Optional

from embq.core.models import Structure, Vocabulary
from embq.logic.models import (
    CliqueAtLeast,
    CountAtLeast,
    EmbeddingClosure,
    HomomorphismClosure,
    QuantifierDef,
    SubstructureClosedComplement,
)
from embq.morphism.engine import embeds, find_morphism
from embq.morphism.models import MorphismKind, MorphismQuery
from embq.shared.exceptions import NotFoundException, ValidationException, VocabularyMismatchException

logger = logging.getLogger(__name__)

UNARY = Vocabulary.of({"U": 1})

# The ordinary existential quantifier: U is nonempty.
EXISTS = QuantifierDef(
    "Exists", UNARY, EmbeddingClosure((Structure.create(UNARY, ["a"], {"U": [("a",)]}),))
)


def _has_clique(structure: Structure, k: int) -> bool:
    name, arity = structure.vocab.relations[0]
    tuples = structure.relation(name)
    candidates = [e for e in structure.universe if (e,) * arity in tuples]
    if k == 0:
        return True
    for subset in combinations(candidates, k):
        if all(t in tuples for t in product(subset, repeat=arity)):
            return True
    return False


def quantifier_member(quantifier: QuantifierDef, structure: Structure) -> bool:
    """
    Decide whether a σ-structure belongs to the quantifier's defining class.

    Args:
        quantifier: The quantifier definition
        structure: Structure over ``quantifier.sigma``

    Returns:
        Membership of ``structure`` in the class

    Raises:
        VocabularyMismatchException: If the structure is not over ``quantifier.sigma``
    """
    if structure.vocab != quantifier.sigma:
        raise VocabularyMismatchException(
            f"{quantifier.name} expects a structure over {quantifier.sigma}, got {structure.vocab}"
        )
    semantics = quantifier.semantics
    if isinstance(semantics, EmbeddingClosure):
        return any(embeds(g, structure) for g in semantics.generators)
    if isinstance(semantics, HomomorphismClosure):
        return any(
            find_morphism(MorphismQuery.build(MorphismKind.HOMOMORPHISM, g, structure)) is not None
            for g in semantics.generators
        )
    if isinstance(semantics, SubstructureClosedComplement):
        return not quantifier_member(semantics.inner, structure)
    if isinstance(semantics, CountAtLeast):
        return len(structure.relations[0]) >= semantics.k
    if isinstance(semantics, CliqueAtLeast):
        return _has_clique(structure, semantics.k)
    raise ValidationException(f"Unsupported quantifier semantics for {quantifier.name}")


def embedding_closure(name: str, generators: Iterable[Structure]) -> QuantifierDef:
    generators = tuple(generators)
    if not generators:
        raise ValidationException(f"{name}: generator list is empty")
    return QuantifierDef(name, generators[0].vocab, EmbeddingClosure(generators))


def count_at_least(name: str, k: int, symbol: str = "U") -> QuantifierDef:
    return QuantifierDef(name, Vocabulary.of({symbol: 1}), CountAtLeast(k))


def complement_of(name: str, inner: QuantifierDef) -> QuantifierDef:
    return QuantifierDef(name, inner.sigma, SubstructureClosedComplement(inner))


class QuantifierRegistry(Mapping[str, QuantifierDef]):
    """Immutable name to definition map."""

    def __init__(self, quantifiers: Iterable[QuantifierDef] = ()):
        table: Dict[str, QuantifierDef] = {}
        for quantifier in quantifiers:
            if quantifier.name in table:
                raise ValidationException(f"Quantifier {quantifier.name} registered twice")
            table[quantifier.name] = quantifier
        self._table = table

    def __getitem__(self, name: str) -> QuantifierDef:
        return self._table[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._table)

    def __len__(self) -> int:
        return len(self._table)

    def require(self, name: str) -> QuantifierDef:
        if name not in self._table:
            raise NotFoundException("Quantifier", name)
        return self._table[name]

    def with_quantifiers(self, quantifiers: Iterable[QuantifierDef]) -> "QuantifierRegistry":
        return QuantifierRegistry(list(self._table.values()) + list(quantifiers))

    @classmethod
    def of(cls, quantifiers: Optional[Iterable[QuantifierDef]] = None) -> "QuantifierRegistry":
        return cls(quantifiers or ())
