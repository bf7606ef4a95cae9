from dataclasses import dataclass
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple

from embq.core.models import Structure

PartialMap = Dict[str, str]


class MorphismKind(str, Enum):
    EMBEDDING = "embedding"
    HOMOMORPHISM = "hom"
    ISOMORPHISM = "iso"

    @classmethod
    def parse(cls, value: str) -> "MorphismKind":
        aliases = {"homomorphism": cls.HOMOMORPHISM, "isomorphism": cls.ISOMORPHISM}
        if value in aliases:
            return aliases[value]
        return cls(value)

    @property
    def injective(self) -> bool:
        return self is not MorphismKind.HOMOMORPHISM


@dataclass(frozen=True)
class MorphismQuery:
    """A search request: maps ``source -> target`` of ``kind`` extending ``pins``."""

    kind: MorphismKind
    source: Structure
    target: Structure
    pins: Tuple[Tuple[str, str], ...] = ()
    limit: Optional[int] = None

    @classmethod
    def build(cls, kind, source: Structure, target: Structure,
              pins: Optional[Mapping[str, str]] = None, limit: Optional[int] = None) -> "MorphismQuery":
        if isinstance(kind, str):
            kind = MorphismKind.parse(kind)
        return cls(kind, source, target, tuple((pins or {}).items()), limit)
