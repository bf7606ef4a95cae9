from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict

from embq.morphism.models import MorphismKind, PartialMap


class MorphismReportSchema(BaseModel):
    """``embq embed`` output: the first map found, or all maps up to a limit."""

    model_config = ConfigDict(extra="forbid")

    kind: str
    found: bool
    map: Optional[Dict[str, str]] = None
    maps: Optional[List[Dict[str, str]]] = None
    count: int = 0

    @classmethod
    def single(cls, kind: MorphismKind, mapping: Optional[PartialMap]) -> "MorphismReportSchema":
        return cls(kind=kind.value, found=mapping is not None, map=mapping, count=int(mapping is not None))

    @classmethod
    def many(cls, kind: MorphismKind, mappings: List[PartialMap]) -> "MorphismReportSchema":
        return cls(kind=kind.value, found=bool(mappings), maps=mappings, count=len(mappings))
