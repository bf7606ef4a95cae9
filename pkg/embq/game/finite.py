"""
Finite Embedding Game
=====================

Each round Duplicator picks embeddings f: A -> B and g: B -> A respecting
the pinned pairs, then Spoiler picks a tuple on one side and pins it
together with its image. Duplicator loses when no such embeddings exist.

The forward and backward choices interact only through the pinned pairs, so
a position is won for n rounds iff some f survives every Spoiler tuple from
A and some g survives every Spoiler tuple from B. More pins only restrict
Duplicator, so Spoiler's tuples of maximal width dominate shorter ones.
"""

import logging
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple

from embq.core.models import Structure
from embq.game.models import DistinguishingResult, FiniteRound, GameOutcome, Position
from embq.morphism.engine import check_embedding, enumerate_morphisms
from embq.morphism.models import MorphismKind, MorphismQuery, PartialMap
from embq.shared.config import settings
from embq.shared.exceptions import ResourceCapExceeded, ValidationException, VocabularyMismatchException

logger = logging.getLogger(__name__)

Pins = FrozenSet[Tuple[str, str]]
LEFT, RIGHT = "left", "right"


def _as_map(pairs) -> Optional[Dict[str, str]]:
    mapping: Dict[str, str] = {}
    for a, b in pairs:
        if mapping.setdefault(a, b) != b:
            return None
    return mapping


class FiniteGame:
    """Memoized solver for one pair of structures; the memo table is private to the instance."""

    def __init__(self, left: Structure, right: Structure, width: Optional[int] = None,
                 cap: Optional[int] = None):
        if left.vocab != right.vocab:
            raise VocabularyMismatchException(
                f"Game structures differ in vocabulary: {left.vocab} vs {right.vocab}"
            )
        cap = settings.CAP_SIZE if cap is None else cap
        for structure in (left, right):
            if structure.size > cap:
                logger.warning(f"Game refused for a {structure.size}-element structure")
                raise ResourceCapExceeded("size", cap, structure.size)
        if width is not None and width < 1:
            raise ValidationException(f"Spoiler width must be positive, got {width}")
        self.left = left
        self.right = right
        self.width = left.size + right.size if width is None else width
        self._embeddings: Dict[Tuple[str, Pins], List[PartialMap]] = {}
        self._values: Dict[Tuple[Pins, int], bool] = {}

    @property
    def positions(self) -> int:
        return len(self._values)

    def embeddings(self, side: str, pins: Pins) -> List[PartialMap]:
        """Duplicator's options on one side: f for ``left``, g for ``right``."""
        key = (side, pins)
        if key not in self._embeddings:
            if side == LEFT:
                source, target, pairs = self.left, self.right, pins
            else:
                source, target, pairs = self.right, self.left, {(b, a) for a, b in pins}
            mapping = _as_map(pairs)
            inverse = _as_map((b, a) for a, b in pairs)
            if mapping is None or inverse is None:
                self._embeddings[key] = []
            else:
                query = MorphismQuery.build(MorphismKind.EMBEDDING, source, target, mapping)
                self._embeddings[key] = enumerate_morphisms(query)
        return self._embeddings[key]

    def moves(self, side: str) -> List[Tuple[str, ...]]:
        universe = (self.left if side == LEFT else self.right).universe
        return list(combinations(universe, min(self.width, len(universe))))

    @staticmethod
    def advance(pins: Pins, side: str, mapping: PartialMap, move: Tuple[str, ...]) -> Pins:
        if side == LEFT:
            return pins | {(c, mapping[c]) for c in move}
        return pins | {(mapping[d], d) for d in move}

    def _good(self, pins: Pins, side: str, mapping: PartialMap, rounds: int) -> bool:
        return all(self.value(self.advance(pins, side, mapping, m), rounds - 1)
                   for m in self.moves(side))

    def value(self, pins: Pins, rounds: int) -> bool:
        if rounds <= 0:
            return True
        key = (pins, rounds)
        if key not in self._values:
            self._values[key] = all(
                any(self._good(pins, side, f, rounds) for f in self.embeddings(side, pins))
                for side in (LEFT, RIGHT)
            )
        return self._values[key]

    def principal_variation(self, pins: Pins, rounds: int) -> List[FiniteRound]:
        """One line of play consistent with optimal play by the winner."""
        line: List[FiniteRound] = []
        while rounds > 0:
            forward, backward = self.embeddings(LEFT, pins), self.embeddings(RIGHT, pins)
            if not forward or not backward:
                line.append(FiniteRound(forward[0] if forward else None, backward[0] if backward else None))
                break
            if self.value(pins, rounds):
                f = next(f for f in forward if self._good(pins, LEFT, f, rounds))
                g = next(g for g in backward if self._good(pins, RIGHT, g, rounds))
                side, mapping = LEFT, f
                move = self.moves(LEFT)[0]
            else:
                f, g = forward[0], backward[0]
                side = LEFT if not any(self._good(pins, LEFT, x, rounds) for x in forward) else RIGHT
                mapping = f if side == LEFT else g
                move = next(m for m in self.moves(side)
                            if not self.value(self.advance(pins, side, mapping, m), rounds - 1))
            line.append(FiniteRound(f, g, side, move))
            pins = self.advance(pins, side, mapping, move)
            rounds -= 1
        return line


def duplicator_survives(position: Position, rounds: int, width: Optional[int] = None,
                        cap: Optional[int] = None) -> GameOutcome:
    """
    Solve the ``rounds``-round embedding game from a position.

    Args:
        position: Structures with pinned tuples
        rounds: Number of rounds, at least 0
        width: Cap on Spoiler's tuple length, default |A| + |B|
        cap: Size cap, default ``EMBQ_CAP_SIZE``

    Returns:
        GameOutcome with a replayable principal variation

    Raises:
        VocabularyMismatchException: If the structures differ in vocabulary
        ResourceCapExceeded: If a structure exceeds the size cap
    """
    if rounds < 0:
        raise ValidationException(f"Round count must be non-negative, got {rounds}")
    game = FiniteGame(position.left, position.right, width, cap)
    survives = game.value(position.pins, rounds)
    witness = tuple(game.principal_variation(position.pins, rounds))
    logger.info(f"Finite game, {rounds} rounds: survives={survives} ({game.positions} positions)")
    return GameOutcome(survives, rounds, witness)


def min_distinguishing_round(left: Structure, right: Structure, cap: Optional[int] = None) -> DistinguishingResult:
    """Least n up to ``cap`` (default ``EMBQ_CAP_ROUNDS``) in which Spoiler wins from the start."""
    cap = settings.CAP_ROUNDS if cap is None else cap
    game = FiniteGame(left, right)
    for n in range(1, cap + 1):
        if not game.value(frozenset(), n):
            return DistinguishingResult(n, cap)
    return DistinguishingResult(None, cap)


def replay_finite(outcome: GameOutcome, position: Position) -> bool:
    """Re-check a finite witness move by move against the game rules."""
    pins = position.pins
    game = FiniteGame(position.left, position.right)
    for i, record in enumerate(outcome.witness):
        if record.forward is None or record.backward is None:
            last = i == len(outcome.witness) - 1
            side = LEFT if record.forward is None else RIGHT
            return last and not outcome.survives and not game.embeddings(side, pins)
        if not (check_embedding(position.left, position.right, record.forward)
                and check_embedding(position.right, position.left, record.backward)):
            return False
        if any(record.forward[a] != b or record.backward[b] != a for a, b in pins):
            return False
        if record.side is not None:
            mapping = record.forward if record.side == LEFT else record.backward
            if any(e not in mapping for e in record.move):
                return False
            pins = game.advance(pins, record.side, mapping, tuple(record.move))
    return outcome.survives and len(outcome.witness) == outcome.rounds
