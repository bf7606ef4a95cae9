from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from embq.core.schemas import StructureSchema
from embq.game.models import DistinguishingResult, FiniteRound, GameOutcome, SymbolicRound

RoundMap = Dict[str, Union[str, List[str]]]


class RoundSchema(BaseModel):
    """Duplicator's choices (maps, or size-group schemas when symbolic) and Spoiler's reply."""

    model_config = ConfigDict(extra="forbid")

    forward: Optional[RoundMap] = None
    backward: Optional[RoundMap] = None
    side: Optional[Literal["left", "right"]] = None
    move: List[str] = Field(default_factory=list)

    @classmethod
    def from_round(cls, record: Union[FiniteRound, SymbolicRound]) -> "RoundSchema":
        def encode(choice):
            if choice is None:
                return None
            if isinstance(choice, dict):
                return dict(choice)
            return {str(size): [str(t) for t in targets] for size, targets in choice}
        return cls(
            forward=encode(record.forward),
            backward=encode(record.backward),
            side=record.side,
            move=[str(m) for m in record.move],
        )


class GameOutcomeSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    survives: bool
    rounds: int
    symbolic: bool = False
    losing_round: Optional[int] = None
    witness: List[RoundSchema] = Field(default_factory=list)

    @classmethod
    def from_outcome(cls, outcome: GameOutcome, with_witness: bool = True) -> "GameOutcomeSchema":
        return cls(
            survives=outcome.survives,
            rounds=outcome.rounds,
            symbolic=outcome.symbolic,
            losing_round=outcome.losing_round,
            witness=[RoundSchema.from_round(r) for r in outcome.witness] if with_witness else [],
        )


class DistinguishingReportSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    round: Optional[int] = None
    cap: int
    capped: bool

    @classmethod
    def from_result(cls, result: DistinguishingResult) -> "DistinguishingReportSchema":
        return cls(round=result.round, cap=result.cap, capped=result.capped)


class TurnSchema(BaseModel):
    """One interactive round: Duplicator's option indices and Spoiler's move."""

    model_config = ConfigDict(extra="forbid")

    forward: Optional[int] = None
    backward: Optional[int] = None
    side: Optional[Literal["left", "right"]] = None
    move: List[str] = Field(default_factory=list)


class TranscriptSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["finite", "symbolic"]
    human: Literal["spoiler", "duplicator"]
    rounds: int
    left: Union[StructureSchema, str]
    right: Union[StructureSchema, str]
    width: Optional[int] = None
    turns: List[TurnSchema] = Field(default_factory=list)
    survives: bool
