from dataclasses import dataclass, field
from functools import total_ordering
from typing import Dict, FrozenSet, Optional, Tuple, Union

from embq.core.models import Structure
from embq.morphism.models import PartialMap
from embq.shared.exceptions import ValidationException

FINITE, ALEPH0, ALEPH1 = 0, 1, 2
_NAMES = {ALEPH0: "aleph0", ALEPH1: "aleph1"}


@total_ordering
@dataclass(frozen=True)
class SymCard:
    """
    A cardinal that is finite, aleph0 or aleph1.

    Infinite cardinals absorb addition and subtraction of anything smaller;
    finite values follow integer arithmetic.
    """

    rank: int
    value: int = 0

    def __post_init__(self):
        if self.rank not in (FINITE, ALEPH0, ALEPH1):
            raise ValidationException(f"Unknown cardinal rank {self.rank}")
        if self.rank == FINITE and self.value < 0:
            raise ValidationException(f"Negative cardinal {self.value}")
        if self.rank != FINITE and self.value:
            object.__setattr__(self, "value", 0)

    @classmethod
    def of(cls, value: Union[int, str, "SymCard"]) -> "SymCard":
        if isinstance(value, SymCard):
            return value
        if isinstance(value, int):
            return cls(FINITE, value)
        text = value.strip().lower()
        if text in ("aleph0", "omega"):
            return cls(ALEPH0)
        if text == "aleph1":
            return cls(ALEPH1)
        if text.isdigit():
            return cls(FINITE, int(text))
        raise ValidationException(f"Unknown cardinal {value!r}")

    @property
    def finite(self) -> bool:
        return self.rank == FINITE

    def _key(self) -> Tuple[int, int]:
        return (self.rank, self.value)

    def __lt__(self, other: "SymCard") -> bool:
        return self._key() < SymCard.of(other)._key()

    def __add__(self, other) -> "SymCard":
        other = SymCard.of(other)
        if self.finite and other.finite:
            return SymCard(FINITE, self.value + other.value)
        return max(self, other)

    def __sub__(self, other) -> "SymCard":
        other = SymCard.of(other)
        if not other.finite:
            raise ValidationException("Only finite cardinals can be subtracted")
        if not self.finite:
            return self
        if other.value > self.value:
            raise ValidationException(f"Cannot subtract {other.value} from {self.value}")
        return SymCard(FINITE, self.value - other.value)

    def __bool__(self) -> bool:
        return not self.finite or self.value > 0

    def __str__(self) -> str:
        return _NAMES.get(self.rank, str(self.value))


ZERO = SymCard(FINITE, 0)
ONE = SymCard(FINITE, 1)


@dataclass(frozen=True)
class SymPin:
    """A named element: class ``index`` of the given size group, element ``element`` in it."""

    name: str
    size: SymCard
    index: int
    element: int

    @property
    def class_ref(self) -> Tuple[SymCard, int]:
        return (self.size, self.index)


@dataclass(frozen=True)
class SymEqStructure:
    """An equivalence relation given by class sizes and counts, with optional named elements."""

    profile: Tuple[Tuple[SymCard, SymCard], ...]
    pins: Tuple[SymPin, ...] = ()

    def __post_init__(self):
        merged: Dict[SymCard, SymCard] = {}
        for size, count in self.profile:
            size, count = SymCard.of(size), SymCard.of(count)
            if not size:
                raise ValidationException("Class sizes must be positive")
            if count:
                merged[size] = merged.get(size, ZERO) + count
        object.__setattr__(self, "profile", tuple(sorted(merged.items())))
        names = set()
        for pin in self.pins:
            if pin.name in names:
                raise ValidationException(f"Duplicate pin {pin.name}")
            names.add(pin.name)
            if pin.size not in merged:
                raise ValidationException(f"Pin {pin.name} refers to a missing class size {pin.size}")
            if SymCard.of(pin.index) >= merged[pin.size] or SymCard.of(pin.element) >= pin.size:
                raise ValidationException(f"Pin {pin.name} is outside its class")

    @property
    def counts(self) -> Dict[SymCard, SymCard]:
        return dict(self.profile)

    def pin(self, name: str) -> SymPin:
        for pin in self.pins:
            if pin.name == name:
                return pin
        raise ValidationException(f"Unknown pin {name}")

    def with_pins(self, pins) -> "SymEqStructure":
        return SymEqStructure(self.profile, tuple(pins))

    def __str__(self) -> str:
        return ",".join(f"({size} x {count})" for size, count in self.profile)


Link = Tuple[SymCard, SymCard, int]
Groups = Tuple[Tuple[SymCard, SymCard], ...]


@dataclass(frozen=True)
class SymState:
    """
    Symbolic game position.

    Untouched class counts per size on each side, plus one link per pair of
    touched classes: (left size, right size, pinned elements in each).
    """

    left: Groups
    right: Groups
    links: Tuple[Link, ...] = ()

    @classmethod
    def build(cls, left: Dict[SymCard, SymCard], right: Dict[SymCard, SymCard], links) -> "SymState":
        def groups(counts):
            return tuple(sorted((s, c) for s, c in counts.items() if c))
        return cls(groups(left), groups(right), tuple(sorted(links)))

    def flipped(self) -> "SymState":
        return SymState(self.right, self.left, tuple(sorted((r, l, k) for l, r, k in self.links)))


@dataclass(frozen=True)
class Position:
    """Two finite structures with equally long tuples of pinned elements."""

    left: Structure
    left_tuple: Tuple[str, ...]
    right: Structure
    right_tuple: Tuple[str, ...]

    def __post_init__(self):
        if len(self.left_tuple) != len(self.right_tuple):
            raise ValidationException("Pinned tuples must have equal length")
        self.left.require_elements(self.left_tuple)
        self.right.require_elements(self.right_tuple)

    @classmethod
    def start(cls, left: Structure, right: Structure) -> "Position":
        return cls(left, (), right, ())

    @property
    def pins(self) -> FrozenSet[Tuple[str, str]]:
        return frozenset(zip(self.left_tuple, self.right_tuple))


@dataclass(frozen=True)
class FiniteRound:
    """One round: Duplicator's embeddings (None when none exists) and Spoiler's reply."""

    forward: Optional[PartialMap]
    backward: Optional[PartialMap]
    side: Optional[str] = None
    move: Tuple[str, ...] = ()


@dataclass(frozen=True)
class SymbolicRound:
    """One symbolic round: class-assignment schemas and Spoiler's move descriptor."""

    forward: Optional[Tuple[Tuple[SymCard, Tuple[SymCard, ...]], ...]]
    backward: Optional[Tuple[Tuple[SymCard, Tuple[SymCard, ...]], ...]]
    side: Optional[str] = None
    move: Tuple = ()


@dataclass(frozen=True)
class GameOutcome:
    survives: bool
    rounds: int
    witness: Tuple = field(default_factory=tuple)
    symbolic: bool = False

    def __bool__(self) -> bool:
        return self.survives

    @property
    def losing_round(self) -> Optional[int]:
        """1-based round in which Duplicator has no legal embeddings."""
        return None if self.survives else len(self.witness)


@dataclass(frozen=True)
class DistinguishingResult:
    round: Optional[int]
    cap: int

    @property
    def capped(self) -> bool:
        return self.round is None
