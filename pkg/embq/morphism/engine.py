"""
Morphism Search
===============

Backtracking search for embeddings, homomorphisms and isomorphisms between
finite structures.

Source elements are tried in universe order (pinned elements first) and
target candidates in universe order, so results are reproducible. Two
filters prune candidates before the full consistency check:

* the loop facts of a source element must match the target's (equal for
  injective kinds, contained for homomorphisms);
* per relation and argument position, the source element's occurrence count
  must be at most the target's (equal for isomorphisms; homomorphisms only
  require an occurrence wherever the source has one).
"""

import logging
from typing import Dict, Iterator, List, Mapping, Optional

from embq.core.models import Structure
from embq.core.types import atomic_type
from embq.morphism.models import MorphismKind, MorphismQuery, PartialMap
from embq.shared.exceptions import NotFoundException, ValidationException, VocabularyMismatchException

logger = logging.getLogger(__name__)


def _require_same_vocab(source: Structure, target: Structure) -> None:
    if source.vocab != target.vocab:
        raise VocabularyMismatchException(
            f"Structures over {source.vocab} and {target.vocab} cannot be compared",
            details={"source": str(source.vocab), "target": str(target.vocab)}
        )


def _validated_pins(query: MorphismQuery) -> Dict[str, str]:
    pins: Dict[str, str] = {}
    for a, b in query.pins:
        if a not in query.source.position:
            raise NotFoundException("Source element", a)
        if b not in query.target.position:
            raise NotFoundException("Target element", b)
        if pins.get(a, b) != b:
            raise ValidationException(
                f"Inconsistent pins: {a} mapped to both {pins[a]} and {b}",
                details={"element": a}
            )
        pins[a] = b
    if query.kind.injective and len(set(pins.values())) != len(pins):
        raise ValidationException("Inconsistent pins: two elements pinned to the same target")
    return pins


def _compatible(query: MorphismQuery, a: str, b: str) -> bool:
    kind = query.kind
    loops_a = atomic_type(query.source, (a,)).facts
    loops_b = atomic_type(query.target, (b,)).facts
    if kind is MorphismKind.HOMOMORPHISM:
        if not loops_a <= loops_b:
            return False
    elif loops_a != loops_b:
        return False

    profile_a = query.source.degree_profile[a]
    profile_b = query.target.degree_profile[b]
    for row_a, row_b in zip(profile_a, profile_b):
        for count_a, count_b in zip(row_a, row_b):
            if kind is MorphismKind.ISOMORPHISM and count_a != count_b:
                return False
            if kind is MorphismKind.EMBEDDING and count_a > count_b:
                return False
            if kind is MorphismKind.HOMOMORPHISM and count_a and not count_b:
                return False
    return True


class _Search:
    """One backtracking run; holds the partial map and its inverse."""

    def __init__(self, query: MorphismQuery):
        self.query = query
        self.source = query.source
        self.target = query.target
        self.kind = query.kind
        self.mapping: Dict[str, str] = {}
        self.inverse: Dict[str, str] = {}

    def consistent(self, a: str, b: str) -> bool:
        if not self.kind.injective:
            self.mapping[a] = b
            ok = self._forward(a)
            del self.mapping[a]
            return ok
        if b in self.inverse:
            return False
        self.mapping[a] = b
        self.inverse[b] = a
        ok = self._forward(a) and self._backward(b)
        del self.mapping[a]
        del self.inverse[b]
        return ok

    def _forward(self, a: str) -> bool:
        for name, tup in self.source.incidence[a]:
            if all(e in self.mapping for e in tup):
                if tuple(self.mapping[e] for e in tup) not in self.target.interp[name]:
                    return False
        return True

    def _backward(self, b: str) -> bool:
        for name, tup in self.target.incidence[b]:
            if all(e in self.inverse for e in tup):
                if tuple(self.inverse[e] for e in tup) not in self.source.interp[name]:
                    return False
        return True

    def assign(self, a: str, b: str) -> None:
        self.mapping[a] = b
        self.inverse.setdefault(b, a)

    def unassign(self, a: str) -> None:
        b = self.mapping.pop(a)
        if self.inverse.get(b) == a:
            del self.inverse[b]

    def run(self, pins: Mapping[str, str]) -> Iterator[PartialMap]:
        if self.kind is MorphismKind.ISOMORPHISM and self.source.size != self.target.size:
            return
        if self.kind.injective and self.source.size > self.target.size:
            return
        for a, b in pins.items():
            if not self.consistent(a, b):
                logger.debug(f"Pins fail at {a}->{b}; no morphism")
                return
            self.assign(a, b)

        order = [a for a in self.source.universe if a not in pins]
        candidates = {
            a: [b for b in self.target.universe if _compatible(self.query, a, b)]
            for a in order
        }
        if any(not options for options in candidates.values()):
            return
        yield from self._extend(order, 0, candidates)

    def _extend(self, order: List[str], depth: int, candidates: Dict[str, List[str]]) -> Iterator[PartialMap]:
        if depth == len(order):
            yield dict(self.mapping)
            return
        a = order[depth]
        for b in candidates[a]:
            if self.consistent(a, b):
                self.assign(a, b)
                yield from self._extend(order, depth + 1, candidates)
                self.unassign(a)


def iter_morphisms(query: MorphismQuery) -> Iterator[PartialMap]:
    """Lazily yield every morphism answering ``query`` in search order."""
    _require_same_vocab(query.source, query.target)
    pins = _validated_pins(query)
    yield from _Search(query).run(pins)


def find_morphism(query: MorphismQuery) -> Optional[PartialMap]:
    """
    Find the first morphism of the requested kind extending the pins.

    Args:
        query: Kind, source, target and pins

    Returns:
        A total map from the source universe, or None

    Raises:
        VocabularyMismatchException: If the structures have different vocabularies
        ValidationException: If the pins are not a (injective) function
    """
    for found in iter_morphisms(query):
        return found
    return None


def enumerate_morphisms(query: MorphismQuery) -> List[PartialMap]:
    """All morphisms extending the pins in search order, truncated at ``query.limit``."""
    found = []
    if query.limit is not None and query.limit <= 0:
        return found
    for mapping in iter_morphisms(query):
        found.append(mapping)
        if query.limit is not None and len(found) >= query.limit:
            break
    logger.debug(f"Enumerated {len(found)} {query.kind.value} maps")
    return found


def find_embedding(source: Structure, target: Structure,
                   pins: Optional[Mapping[str, str]] = None) -> Optional[PartialMap]:
    return find_morphism(MorphismQuery.build(MorphismKind.EMBEDDING, source, target, pins))


def embeds(source: Structure, target: Structure, pins: Optional[Mapping[str, str]] = None) -> bool:
    return find_embedding(source, target, pins) is not None


def bi_embeddable(left: Structure, right: Structure) -> bool:
    """True iff each structure embeds into the other."""
    _require_same_vocab(left, right)
    return embeds(left, right) and embeds(right, left)


def is_isomorphic(left: Structure, right: Structure) -> bool:
    return find_morphism(MorphismQuery.build(MorphismKind.ISOMORPHISM, left, right)) is not None


def automorphisms(structure: Structure, kind: MorphismKind = MorphismKind.ISOMORPHISM) -> List[PartialMap]:
    """All self-maps of ``kind`` (isomorphisms and embeddings coincide on finite structures)."""
    return enumerate_morphisms(MorphismQuery.build(kind, structure, structure))


def _require_total(source: Structure, target: Structure, mapping: Mapping[str, str]) -> None:
    missing = [a for a in source.universe if a not in mapping]
    if missing:
        raise ValidationException(
            f"Map is not total: no image for {missing[0]}",
            details={"missing": missing}
        )
    for a in source.universe:
        if mapping[a] not in target.position:
            raise NotFoundException("Target element", mapping[a])


def check_homomorphism(source: Structure, target: Structure, mapping: Mapping[str, str]) -> bool:
    _require_same_vocab(source, target)
    _require_total(source, target, mapping)
    for name, tuples in source.interp.items():
        image = target.interp[name]
        if any(tuple(mapping[e] for e in t) not in image for t in tuples):
            return False
    return True


def check_embedding(source: Structure, target: Structure, mapping: Mapping[str, str]) -> bool:
    """
    Check that a total map is an embedding.

    Returns:
        True iff the map is injective and every relation holds of a tuple
        exactly when it holds of the tuple's image

    Raises:
        ValidationException: If the map is not total on the source universe
    """
    _require_same_vocab(source, target)
    _require_total(source, target, mapping)
    images = [mapping[a] for a in source.universe]
    if len(set(images)) != len(images):
        return False
    if not check_homomorphism(source, target, mapping):
        return False
    inverse = {b: a for a, b in zip(source.universe, images)}
    for name, tuples in target.interp.items():
        for t in tuples:
            if all(e in inverse for e in t) and tuple(inverse[e] for e in t) not in source.interp[name]:
                return False
    return True


def check_isomorphism(source: Structure, target: Structure, mapping: Mapping[str, str]) -> bool:
    return source.size == target.size and check_embedding(source, target, mapping)


def compose(first: Mapping[str, str], second: Mapping[str, str]) -> PartialMap:
    """``second`` after ``first``."""
    return {a: second[b] for a, b in first.items()}


def invert(mapping: Mapping[str, str]) -> PartialMap:
    return {b: a for a, b in mapping.items()}
