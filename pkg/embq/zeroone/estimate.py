"""
Asymptotic Probability Estimates
================================

Monte Carlo estimates of the probability that a random structure of a
given size satisfies a sentence, with Wilson score intervals. Work is
split into index ranges; with ``jobs > 1`` the ranges run in worker
processes and the counts are summed, which gives the serial result.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from scipy.stats import norm

from embq.core.models import Vocabulary
from embq.logic.evaluator import compile_formula
from embq.logic.models import Formula
from embq.logic.syntax import free_variables, relation_symbols
from embq.shared.config import settings
from embq.shared.exceptions import ValidationException, VocabularyMismatchException
from embq.zeroone.models import MuEstimate, SampleConfig
from embq.zeroone.sampling import sample_random_structure

logger = logging.getLogger(__name__)


def wilson_interval(successes: int, samples: int, confidence: float = 0.95) -> Tuple[float, float]:
    """Two-sided Wilson score interval for a binomial proportion."""
    if samples <= 0:
        raise ValidationException("Wilson interval needs at least one sample")
    z = norm.ppf(1 - (1 - confidence) / 2)
    phat = successes / samples
    denom = 1 + z * z / samples
    center = (phat + z * z / (2 * samples)) / denom
    half = z * math.sqrt(phat * (1 - phat) / samples + z * z / (4 * samples * samples)) / denom
    low = min(max(0.0, center - half), phat)
    high = max(min(1.0, center + half), phat)
    return low, high


def _count(formula: Formula, config: SampleConfig, start: int, stop: int) -> int:
    check = compile_formula(formula)
    return sum(1 for i in range(start, stop) if check(sample_random_structure(config, i), {}))


def _chunks(samples: int, jobs: int) -> List[Tuple[int, int]]:
    step = max(1, math.ceil(samples / jobs))
    return [(start, min(start + step, samples)) for start in range(0, samples, step)]


def _require_sentence(formula: Formula, vocab: Vocabulary) -> None:
    free = free_variables(formula)
    if free:
        raise ValidationException(
            f"Expected a sentence, found free variables {sorted(free)}",
            details={"variables": sorted(free)}
        )
    unknown = sorted(relation_symbols(formula) - set(vocab.symbols))
    if unknown:
        raise VocabularyMismatchException(f"Symbols {unknown} are not in {vocab}")


def estimate_mu(formula: Formula, config: SampleConfig, jobs: Optional[int] = None) -> MuEstimate:
    """
    Estimate the probability that a random structure satisfies a sentence.

    Args:
        formula: Sentence over ``config.vocab``
        config: Sample stream parameters
        jobs: Worker processes, default ``EMBQ_JOBS``

    Returns:
        MuEstimate with the Wilson interval

    Raises:
        ValidationException: If the formula has free variables
    """
    _require_sentence(formula, config.vocab)
    jobs = settings.JOBS if jobs is None else max(1, jobs)
    chunks = _chunks(config.samples, jobs)
    if jobs == 1 or len(chunks) == 1:
        successes = _count(formula, config, 0, config.samples)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_count, formula, config, start, stop) for start, stop in chunks]
            successes = sum(f.result() for f in futures)
    low, high = wilson_interval(successes, config.samples)
    logger.info(f"n={config.size}: {successes}/{config.samples} samples satisfy {formula}")
    return MuEstimate(successes / config.samples, config.samples, successes, low, high)


def estimate_series(formula: Formula, config: SampleConfig, sizes: Sequence[int],
                    jobs: Optional[int] = None) -> List[Tuple[int, MuEstimate]]:
    """One estimate per structure size, all from the same seed."""
    return [(size, estimate_mu(formula, config.with_size(size), jobs)) for size in sizes]
