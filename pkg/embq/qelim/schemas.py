from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from embq.core.models import Vocabulary
from embq.core.schemas import TypeDisjunctionSchema
from embq.qelim.models import (
    EliminationResult,
    HomogeneityReport,
    StabilizationResult,
    StabilizerEntry,
    TypeChainReport,
)


class HomogeneityReportSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    homogeneous: bool
    size: int
    kind: str
    group_order: int
    counterexample: Optional[Tuple[List[str], List[str]]] = None

    @classmethod
    def from_report(cls, report: HomogeneityReport) -> "HomogeneityReportSchema":
        counterexample = None
        if report.counterexample is not None:
            left, right = report.counterexample
            counterexample = (list(left), list(right))
        return cls(
            homogeneous=report.homogeneous,
            size=report.structure.size,
            kind=report.kind,
            group_order=report.group_order,
            counterexample=counterexample,
        )


class EliminationReportSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    input: str
    theta: TypeDisjunctionSchema

    @classmethod
    def from_result(cls, formula: str, result: EliminationResult, vocab: Vocabulary) -> "EliminationReportSchema":
        return cls(input=formula, theta=TypeDisjunctionSchema.from_disjunction(result.theta, vocab))


class TypeChainReportSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    formula: str
    variables: List[str]
    type_counts: List[int]
    truths: Optional[List[bool]] = None
    stabilization_index: int
    witnessed: bool
    monotone: bool
    theta: TypeDisjunctionSchema

    @classmethod
    def from_report(cls, formula: str, report: TypeChainReport, vocab: Vocabulary) -> "TypeChainReportSchema":
        return cls(
            formula=formula,
            variables=list(report.variables),
            type_counts=[len(t) for t in report.type_sets],
            truths=report.truths if not report.variables else None,
            stabilization_index=report.stabilization_index,
            witnessed=report.witnessed,
            monotone=report.monotone,
            theta=TypeDisjunctionSchema.from_disjunction(report.theta, vocab),
        )


class StabilizationStepSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subformula: str
    start: int
    index: int


class StabilizationReportSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    formula: str
    index: int
    theta: TypeDisjunctionSchema
    steps: List[StabilizationStepSchema]

    @classmethod
    def from_result(cls, formula: str, result: StabilizationResult,
                    vocab: Vocabulary) -> "StabilizationReportSchema":
        return cls(
            formula=formula,
            index=result.index,
            theta=TypeDisjunctionSchema.from_disjunction(result.theta, vocab),
            steps=[StabilizationStepSchema(subformula=s.subformula, start=s.start, index=s.index)
                   for s in result.steps],
        )


class StabilizerEntrySchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    position: int
    size: int
    truth: bool

    @classmethod
    def from_entry(cls, entry: StabilizerEntry) -> "StabilizerEntrySchema":
        return cls(position=entry.position, size=entry.structure.size, truth=entry.truth)
