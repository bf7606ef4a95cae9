"""
Structure file format.

``{"vocabulary": {"E": 2}, "universe": ["a", "b"], "relations": {"E": [["a", "b"]]}}``
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from embq.core.models import AtomicType, Structure, TypeDisjunction, Vocabulary
from embq.shared.exceptions import NotFoundException, ValidationException

logger = logging.getLogger(__name__)


class StructureSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vocabulary: Dict[str, int]
    universe: List[str]
    relations: Dict[str, List[List[str]]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_consistency(self):
        for name, arity in self.vocabulary.items():
            if not name or arity < 1:
                raise ValueError(f"invalid symbol {name!r} with arity {arity}")
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("universe elements must be distinct")
        members = set(self.universe)
        for name, tuples in self.relations.items():
            if name not in self.vocabulary:
                raise ValueError(f"relation {name} is not in the vocabulary")
            for tup in tuples:
                if len(tup) != self.vocabulary[name]:
                    raise ValueError(f"tuple {tup} of {name} has the wrong arity")
                missing = [e for e in tup if e not in members]
                if missing:
                    raise ValueError(f"tuple {tup} of {name} uses elements outside the universe")
        return self

    def to_structure(self) -> Structure:
        return Structure.create(Vocabulary.of(self.vocabulary), self.universe, self.relations)

    @classmethod
    def from_structure(cls, structure: Structure) -> "StructureSchema":
        return cls(
            vocabulary=structure.vocab.as_dict(),
            universe=list(structure.universe),
            relations={
                name: [list(t) for t in sorted(tuples)]
                for name, tuples in structure.interp.items()
            },
        )


class VocabularySchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vocabulary: Dict[str, int]

    def to_vocabulary(self) -> Vocabulary:
        return Vocabulary.of(self.vocabulary)


def describe_validation_error(exc: ValidationError) -> dict:
    """Flatten a pydantic error into field paths and messages."""
    return {
        "errors": [
            {"field": ".".join(str(p) for p in err["loc"]) or "<root>", "message": err["msg"]}
            for err in exc.errors()
        ]
    }


def read_text(path: Union[str, Path], resource: str = "File") -> str:
    path = Path(path)
    if not path.is_file():
        raise NotFoundException(resource, str(path))
    return path.read_text(encoding="utf-8")


def parse_structure(text: str, source: str = "<string>") -> Structure:
    try:
        schema = StructureSchema.model_validate_json(text)
    except ValidationError as exc:
        details = describe_validation_error(exc)
        details["path"] = source
        first = details["errors"][0]
        raise ValidationException(
            f"{source}: invalid structure at {first['field']}: {first['message']}",
            details=details
        )
    return schema.to_structure()


def load_structure(path: Union[str, Path]) -> Structure:
    """Read and validate a structure JSON file."""
    structure = parse_structure(read_text(path, "Structure file"), str(path))
    logger.info(f"Loaded structure {path} with {structure.size} elements")
    return structure


def load_vocabulary(path: Union[str, Path]) -> Vocabulary:
    """Read a vocabulary file: a bare map or ``{"vocabulary": {...}}``."""
    text = read_text(path, "Vocabulary file")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationException(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            details={"path": str(path), "line": exc.lineno, "column": exc.colno}
        )
    if isinstance(raw, dict) and "vocabulary" not in raw:
        raw = {"vocabulary": raw}
    try:
        return VocabularySchema.model_validate(raw).to_vocabulary()
    except ValidationError as exc:
        details = describe_validation_error(exc)
        details["path"] = str(path)
        raise ValidationException(f"{path}: invalid vocabulary", details=details)


def dump_structure(structure: Structure) -> str:
    return StructureSchema.from_structure(structure).model_dump_json(indent=2)


class AtomicTypeSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rgs: List[int]
    facts: List[Tuple[str, List[int]]] = Field(default_factory=list)

    @classmethod
    def from_type(cls, t: AtomicType) -> "AtomicTypeSchema":
        return cls(rgs=list(t.rgs), facts=[(name, list(args)) for name, args in sorted(t.facts)])

    def to_type(self) -> AtomicType:
        return AtomicType(tuple(self.rgs), frozenset((name, tuple(args)) for name, args in self.facts))


class TypeDisjunctionSchema(BaseModel):
    """A type disjunction with its rendering as a quantifier-free formula."""

    model_config = ConfigDict(extra="forbid")

    variables: List[str]
    types: List[AtomicTypeSchema]
    formula: str

    @classmethod
    def from_disjunction(cls, theta: TypeDisjunction, vocab: Vocabulary) -> "TypeDisjunctionSchema":
        return cls(
            variables=list(theta.variables),
            types=[AtomicTypeSchema.from_type(t) for t in sorted(theta.types, key=lambda t: t.sort_key)],
            formula=str(theta.to_formula(vocab)),
        )

    def to_disjunction(self) -> TypeDisjunction:
        return TypeDisjunction(tuple(self.variables), frozenset(t.to_type() for t in self.types))
