from typing import List

from pydantic import BaseModel, ConfigDict

from embq.zeroone.models import MuEstimate


class MuRowSchema(BaseModel):
    """One row of ``embq zeroone`` output."""

    model_config = ConfigDict(extra="forbid")

    size: int
    samples: int
    successes: int
    estimate: float
    ci_low: float
    ci_high: float

    @classmethod
    def from_estimate(cls, size: int, estimate: MuEstimate) -> "MuRowSchema":
        return cls(
            size=size,
            samples=estimate.samples,
            successes=estimate.successes,
            estimate=estimate.estimate,
            ci_low=estimate.low,
            ci_high=estimate.high,
        )


class MuReportSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    formula: str
    seed: int
    p: float
    rows: List[MuRowSchema]
