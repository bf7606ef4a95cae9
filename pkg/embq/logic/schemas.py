"""
Quantifier registry file format.

A registry file holds one quantifier object or a list of them::

    {"name": "Qhas3", "sigma": {"U": 1}, "kind": "embedding_closure", "generators": ["gen1.json"]}
    {"name": "Q3", "kind": "count_at_least", "k": 3}
    {"name": "Qsub", "kind": "substructure_complement", "inner": {...}}

Generators are structure file paths (relative to the registry file) or
inline structure objects.
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from embq.core.models import Vocabulary
from embq.core.schemas import StructureSchema, describe_validation_error, load_structure, read_text
from embq.logic.models import (
    CliqueAtLeast,
    CountAtLeast,
    EmbeddingClosure,
    HomomorphismClosure,
    QuantifierDef,
    SubstructureClosedComplement,
)
from embq.logic.quantifiers import QuantifierRegistry
from embq.shared.exceptions import ValidationException

logger = logging.getLogger(__name__)

QuantifierKind = Literal[
    "embedding_closure",
    "homomorphism_closure",
    "substructure_complement",
    "count_at_least",
    "clique_at_least",
]


class QuantifierSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    sigma: Optional[Dict[str, int]] = None
    kind: QuantifierKind
    generators: Optional[List[Union[str, StructureSchema]]] = None
    k: Optional[int] = None
    inner: Optional["QuantifierSchema"] = None

    @model_validator(mode="after")
    def check_kind_fields(self):
        if self.kind in ("embedding_closure", "homomorphism_closure") and not self.generators:
            raise ValueError(f"{self.kind} requires a nonempty generators list")
        if self.kind in ("count_at_least", "clique_at_least") and (self.k is None or self.k < 0):
            raise ValueError(f"{self.kind} requires a non-negative k")
        if self.kind == "substructure_complement" and self.inner is None:
            raise ValueError("substructure_complement requires inner")
        return self

    def to_quantifier(self, base_dir: Path = Path("."), default_name: str = "Q") -> QuantifierDef:
        name = self.name or default_name
        if self.kind in ("embedding_closure", "homomorphism_closure"):
            generators = tuple(
                load_structure(base_dir / g) if isinstance(g, str) else g.to_structure()
                for g in self.generators
            )
            sigma = Vocabulary.of(self.sigma) if self.sigma is not None else generators[0].vocab
            semantics = (EmbeddingClosure if self.kind == "embedding_closure" else HomomorphismClosure)(generators)
            return QuantifierDef(name, sigma, semantics)
        if self.kind == "count_at_least":
            return QuantifierDef(name, Vocabulary.of(self.sigma or {"U": 1}), CountAtLeast(self.k))
        if self.kind == "clique_at_least":
            return QuantifierDef(name, Vocabulary.of(self.sigma or {"M": 2}), CliqueAtLeast(self.k))
        inner = self.inner.to_quantifier(base_dir, f"{name}_inner")
        sigma = Vocabulary.of(self.sigma) if self.sigma is not None else inner.sigma
        return QuantifierDef(name, sigma, SubstructureClosedComplement(inner))

    @classmethod
    def from_quantifier(cls, quantifier: QuantifierDef) -> "QuantifierSchema":
        semantics = quantifier.semantics
        data = {"name": quantifier.name, "sigma": quantifier.sigma.as_dict(), "kind": quantifier.kind}
        if isinstance(semantics, (EmbeddingClosure, HomomorphismClosure)):
            data["generators"] = [StructureSchema.from_structure(g) for g in semantics.generators]
        elif isinstance(semantics, (CountAtLeast, CliqueAtLeast)):
            data["k"] = semantics.k
        else:
            data["inner"] = cls.from_quantifier(semantics.inner)
        return cls(**data)


QuantifierSchema.model_rebuild()


def parse_registry(text: str, base_dir: Path = Path("."), source: str = "<string>") -> QuantifierRegistry:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationException(
            f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            details={"path": source, "line": exc.lineno, "column": exc.colno}
        )
    entries = raw if isinstance(raw, list) else [raw]
    quantifiers = []
    for i, entry in enumerate(entries):
        try:
            schema = QuantifierSchema.model_validate(entry)
        except ValidationError as exc:
            details = describe_validation_error(exc)
            details["path"] = source
            first = details["errors"][0]
            raise ValidationException(
                f"{source}: invalid quantifier #{i} at {first['field']}: {first['message']}",
                details=details
            )
        quantifiers.append(schema.to_quantifier(base_dir, f"Q{i}"))
    return QuantifierRegistry(quantifiers)


def load_registry(path: Union[str, Path]) -> QuantifierRegistry:
    """Read a registry file; generator paths resolve relative to it."""
    path = Path(path)
    registry = parse_registry(read_text(path, "Quantifier registry"), path.parent, str(path))
    logger.info(f"Loaded {len(registry)} quantifiers from {path}")
    return registry


class CheckReportSchema(BaseModel):
    """``embq check`` output."""

    model_config = ConfigDict(extra="forbid")

    formula: str
    holds: bool
    assignment: Dict[str, str] = Field(default_factory=dict)
