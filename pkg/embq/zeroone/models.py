from dataclasses import dataclass

from embq.core.models import Vocabulary
from embq.shared.exceptions import ValidationException

SEED_LIMIT = 2 ** 64


@dataclass(frozen=True)
class SampleConfig:
    """
    Parameters of a sample stream.

    Sample ``i`` depends only on ``(seed, i)``, so any split of the index
    range over workers yields the same structures.
    """

    vocab: Vocabulary
    size: int
    samples: int
    seed: int = 42
    p: float = 0.5

    def __post_init__(self):
        if self.size < 0:
            raise ValidationException(f"Structure size must be non-negative, got {self.size}")
        if self.samples < 1:
            raise ValidationException(f"Sample count must be positive, got {self.samples}")
        if not 0.0 <= self.p <= 1.0:
            raise ValidationException(f"Tuple probability must lie in [0, 1], got {self.p}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise ValidationException(f"Seed must be a 64-bit unsigned integer, got {self.seed}")

    def with_size(self, size: int) -> "SampleConfig":
        return SampleConfig(self.vocab, size, self.samples, self.seed, self.p)


@dataclass(frozen=True)
class MuEstimate:
    """Fraction of samples satisfying a sentence, with a 95% Wilson score interval."""

    estimate: float
    samples: int
    successes: int
    low: float
    high: float
