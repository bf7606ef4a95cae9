from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

from embq.core.models import AtomicType, Structure, TypeDisjunction
from embq.logic.models import Formula
from embq.morphism.engine import find_embedding
from embq.morphism.models import PartialMap
from embq.shared.exceptions import ValidationException, VocabularyMismatchException


@dataclass(frozen=True)
class Chain:
    """Structures with an embedding of each member into the next."""

    structures: Tuple[Structure, ...]
    embeddings: Tuple[Tuple[Tuple[str, str], ...], ...]

    @classmethod
    def build(cls, structures) -> "Chain":
        structures = tuple(structures)
        if not structures:
            raise ValidationException("A chain needs at least one structure")
        embeddings = []
        for i in range(len(structures) - 1):
            left, right = structures[i], structures[i + 1]
            if left.vocab != right.vocab:
                raise VocabularyMismatchException(f"Chain members {i} and {i + 1} differ in vocabulary")
            mapping = find_embedding(left, right)
            if mapping is None:
                raise ValidationException(
                    f"Chain member {i} does not embed into member {i + 1}",
                    details={"index": i}
                )
            embeddings.append(tuple(mapping.items()))
        return cls(structures, tuple(embeddings))

    def __len__(self) -> int:
        return len(self.structures)

    def __getitem__(self, i: int) -> Structure:
        return self.structures[i]

    def tail(self, start: int) -> "Chain":
        return Chain(self.structures[start:], self.embeddings[start:])

    @property
    def vocab(self):
        return self.structures[0].vocab


@dataclass(frozen=True)
class HomogeneityReport:
    structure: Structure
    homogeneous: bool
    counterexample: Optional[Tuple[Tuple[str, ...], Tuple[str, ...]]] = None
    kind: str = "iso"
    group_order: int = 0

    def __bool__(self) -> bool:
        return self.homogeneous


@dataclass(frozen=True)
class EliminationResult:
    theta: TypeDisjunction
    formula: Formula


@dataclass(frozen=True)
class TypeChainReport:
    """Realized types satisfying a quantifier application along a chain."""

    variables: Tuple[str, ...]
    type_sets: Tuple[FrozenSet[AtomicType], ...]
    stabilization_index: int
    witnessed: bool
    monotone: bool
    theta: TypeDisjunction

    @property
    def truths(self) -> List[bool]:
        """For sentences: truth value per chain index."""
        return [bool(types) for types in self.type_sets]


@dataclass(frozen=True)
class StabilizationStep:
    subformula: str
    start: int
    index: int


@dataclass(frozen=True)
class StabilizationResult:
    index: int
    variables: Tuple[str, ...]
    formula: Formula
    theta: TypeDisjunction
    steps: Tuple[StabilizationStep, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class StabilizerEntry:
    structure: Structure
    truth: bool
    position: int


def counterexample_map(report: HomogeneityReport) -> PartialMap:
    left, right = report.counterexample
    return dict(zip(left, right))
