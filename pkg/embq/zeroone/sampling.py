"""
Random Structures
=================

Each tuple of each relation is included independently with probability p.
Generators are counter-based (Philox) and keyed by ``(seed, index)``.
"""

import logging
from itertools import product
from typing import Iterator

import numpy as np

from embq.core.models import Structure
from embq.zeroone.models import SampleConfig

logger = logging.getLogger(__name__)


def sample_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def sample_random_structure(config: SampleConfig, index: int) -> Structure:
    """
    Draw sample ``index`` of the stream described by ``config``.

    Args:
        config: Vocabulary, size, seed and tuple probability
        index: Position in the stream

    Returns:
        Structure with universe "0".."n-1"
    """
    rng = sample_generator(config.seed, index)
    universe = tuple(str(i) for i in range(config.size))
    interp = {}
    for symbol, arity in config.vocab:
        tuples = list(product(universe, repeat=arity))
        keep = rng.random(len(tuples)) < config.p
        interp[symbol] = [t for t, k in zip(tuples, keep) if k]
    return Structure.create(config.vocab, universe, interp)


def sample_stream(config: SampleConfig, start: int = 0, stop: int = None) -> Iterator[Structure]:
    stop = config.samples if stop is None else stop
    for index in range(start, stop):
        yield sample_random_structure(config, index)
