"""
Core Domain Models
==================

Immutable relational vocabularies, finite structures and atomic types.

Element ids are strings. Relation interpretations are stored aligned with the
vocabulary's declared symbol order, so two structures compare equal exactly
when they have the same vocabulary, the same universe order and the same
relations.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from embq.shared.exceptions import NotFoundException, ValidationException, VocabularyMismatchException

ElementTuple = Tuple[str, ...]


@dataclass(frozen=True)
class Vocabulary:
    """Ordered relational vocabulary: symbol name to arity."""

    relations: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for name, arity in self.relations:
            if not isinstance(name, str) or not name:
                raise ValidationException("Relation symbol names must be nonempty strings")
            if name in seen:
                raise ValidationException(f"Duplicate relation symbol: {name}")
            if not isinstance(arity, int) or arity < 1:
                raise ValidationException(
                    f"Arity of {name} must be a positive integer",
                    details={"symbol": name, "arity": arity}
                )
            seen.add(name)

    @classmethod
    def of(cls, relations: Mapping[str, int]) -> "Vocabulary":
        return cls(tuple((name, arity) for name, arity in relations.items()))

    @property
    def symbols(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.relations)

    def arity(self, name: str) -> int:
        for symbol, arity in self.relations:
            if symbol == name:
                return arity
        raise NotFoundException("Relation symbol", name)

    def __contains__(self, name: str) -> bool:
        return any(symbol == name for symbol, _ in self.relations)

    def __iter__(self) -> Iterator[Tuple[str, int]]:
        return iter(self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def as_dict(self) -> Dict[str, int]:
        return dict(self.relations)

    def extend(self, extra: Mapping[str, int]) -> "Vocabulary":
        """Return this vocabulary followed by ``extra`` (names must be new)."""
        for name in extra:
            if name in self:
                raise VocabularyMismatchException(
                    f"Relation symbol {name} already present",
                    details={"symbol": name}
                )
        return Vocabulary(self.relations + tuple(extra.items()))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{name}:{arity}" for name, arity in self.relations) + "}"


@dataclass(frozen=True)
class Structure:
    """
    Finite relational structure.

    Use :meth:`create` to build one from a plain mapping; the constructor
    expects relations already aligned with ``vocab``.
    """

    vocab: Vocabulary
    universe: ElementTuple
    relations: Tuple[FrozenSet[ElementTuple], ...]

    def __post_init__(self):
        if len(set(self.universe)) != len(self.universe):
            raise ValidationException("Universe elements must be distinct")
        if len(self.relations) != len(self.vocab):
            raise ValidationException("Relations must align with the vocabulary")
        members = set(self.universe)
        for (name, arity), tuples in zip(self.vocab, self.relations):
            for tup in tuples:
                if len(tup) != arity:
                    raise ValidationException(
                        f"Tuple {list(tup)} of {name} has length {len(tup)}, expected {arity}",
                        details={"symbol": name}
                    )
                for element in tup:
                    if element not in members:
                        raise NotFoundException("Element", element)

    @classmethod
    def create(
        cls,
        vocab: Vocabulary,
        universe: Iterable[str],
        interp: Optional[Mapping[str, Iterable[Sequence[str]]]] = None
    ) -> "Structure":
        interp = dict(interp or {})
        for name in interp:
            if name not in vocab:
                raise NotFoundException("Relation symbol", name)
        relations = tuple(
            frozenset(tuple(t) for t in interp.get(name, ()))
            for name in vocab.symbols
        )
        return cls(vocab, tuple(universe), relations)

    @property
    def size(self) -> int:
        return len(self.universe)

    def __len__(self) -> int:
        return len(self.universe)

    @cached_property
    def interp(self) -> Dict[str, FrozenSet[ElementTuple]]:
        return dict(zip(self.vocab.symbols, self.relations))

    @cached_property
    def position(self) -> Dict[str, int]:
        return {element: i for i, element in enumerate(self.universe)}

    def relation(self, name: str) -> FrozenSet[ElementTuple]:
        try:
            return self.interp[name]
        except KeyError:
            raise NotFoundException("Relation symbol", name)

    def holds(self, name: str, tup: Sequence[str]) -> bool:
        return tuple(tup) in self.relation(name)

    def require_elements(self, elements: Iterable[str]) -> None:
        for element in elements:
            if element not in self.position:
                raise NotFoundException("Element", element)

    @cached_property
    def incidence(self) -> Dict[str, List[Tuple[str, ElementTuple]]]:
        """Per element, the facts it occurs in."""
        table: Dict[str, List[Tuple[str, ElementTuple]]] = {e: [] for e in self.universe}
        for name, tuples in zip(self.vocab.symbols, self.relations):
            for tup in sorted(tuples):
                for element in set(tup):
                    table[element].append((name, tup))
        return table

    @cached_property
    def degree_profile(self) -> Dict[str, Tuple[Tuple[int, ...], ...]]:
        """Per element, occurrence counts per relation and argument position."""
        profile = {}
        for element in self.universe:
            rows = []
            for (name, arity), tuples in zip(self.vocab, self.relations):
                counts = [0] * arity
                for tup in tuples:
                    for i, entry in enumerate(tup):
                        if entry == element:
                            counts[i] += 1
                rows.append(tuple(counts))
            profile[element] = tuple(rows)
        return profile

    def __str__(self) -> str:
        parts = []
        for name, tuples in zip(self.vocab.symbols, self.relations):
            rendered = ", ".join("(" + ",".join(t) + ")" for t in sorted(tuples))
            parts.append(f"{name}={{{rendered}}}")
        return f"Structure(universe=[{', '.join(self.universe)}], {'; '.join(parts)})"


@dataclass(frozen=True)
class AtomicType:
    """
    Atomic type of an n-tuple.

    ``rgs`` is the equality pattern as a restricted growth string: position i
    holds the 0-based block of variable x_{i+1}, blocks numbered in order of
    first occurrence. ``facts`` lists the true relation atoms over block ids;
    every other atom over the blocks is false.
    """

    rgs: Tuple[int, ...]
    facts: FrozenSet[Tuple[str, Tuple[int, ...]]] = field(default_factory=frozenset)

    @property
    def arity(self) -> int:
        return len(self.rgs)

    @property
    def sort_key(self) -> Tuple:
        return (self.rgs, tuple(sorted(self.facts)))

    @property
    def blocks(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    @property
    def eq_pattern(self) -> List[FrozenSet[int]]:
        """Equality classes of variable indices, 1-based."""
        classes: List[set] = [set() for _ in range(self.blocks)]
        for i, block in enumerate(self.rgs):
            classes[block].add(i + 1)
        return [frozenset(c) for c in classes]

    @property
    def variable_facts(self) -> FrozenSet[Tuple[str, Tuple[int, ...]]]:
        """Facts expressed over 1-based variable indices (first variable of each block)."""
        first = {}
        for i, block in enumerate(self.rgs):
            first.setdefault(block, i + 1)
        return frozenset((name, tuple(first[b] for b in args)) for name, args in self.facts)

    def canonical_model(self, vocab: Vocabulary) -> Tuple[Structure, ElementTuple]:
        """One element ``e{b}`` per block, relations exactly the facts."""
        universe = tuple(f"e{b}" for b in range(self.blocks))
        interp: Dict[str, List[ElementTuple]] = {}
        for name, args in self.facts:
            interp.setdefault(name, []).append(tuple(f"e{b}" for b in args))
        structure = Structure.create(vocab, universe, interp)
        return structure, tuple(f"e{b}" for b in self.rgs)

    def __str__(self) -> str:
        pattern = "".join(str(b) for b in self.rgs)
        facts = ", ".join(
            f"{name}({','.join(str(i) for i in args)})"
            for name, args in sorted(self.variable_facts)
        )
        return f"<{pattern} | {facts}>"


@dataclass(frozen=True)
class TypeDisjunction:
    """A set of atomic types over named variables, read as their disjunction."""

    variables: Tuple[str, ...]
    types: FrozenSet[AtomicType]

    @property
    def is_false(self) -> bool:
        return not self.types

    def holds(self, structure: Structure, assignment: Sequence[str]) -> bool:
        from embq.core.types import atomic_type

        return atomic_type(structure, assignment) in self.types

    def holds_for(self, structure: Structure, env: Mapping[str, str]) -> bool:
        return self.holds(structure, tuple(env[v] for v in self.variables))

    def to_formula(self, vocab: Vocabulary):
        from embq.core.types import type_formula
        from embq.logic.models import Bottom, Or

        disjuncts = [type_formula(t, vocab, self.variables) for t in sorted(self.types, key=lambda t: t.sort_key)]
        if not disjuncts:
            return Bottom()
        if len(disjuncts) == 1:
            return disjuncts[0]
        return Or(tuple(disjuncts))

    def __len__(self) -> int:
        return len(self.types)
