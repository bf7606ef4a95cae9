"""
Symbolic Equivalence Structures
===============================

Equivalence relations described by ``(class size x class count)`` profiles
over finite cardinals, aleph0 and aleph1, and the embedding game between
them.

An embedding of equivalence relations sends classes injectively to classes
at least as large. Game positions therefore only record how many classes
of each size are still untouched on each side, and for every pair of
touched classes their sizes and how many elements are pinned in them.
Spoiler plays one element per round: a pinned one, a fresh one in a touched
class, or a fresh one in an untouched class of some size. Duplicator's
embedding is abstracted to a schema sending each untouched size group to
the set of target sizes its classes use.
"""

import logging
from functools import reduce
from itertools import chain, combinations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from embq.core.models import Structure, Vocabulary
from embq.game.models import ONE, ZERO, GameOutcome, SymCard, SymEqStructure, SymPin, SymState, SymbolicRound
from embq.shared.config import settings
from embq.shared.exceptions import ResourceCapExceeded, ValidationException

logger = logging.getLogger(__name__)

LEFT, RIGHT = "left", "right"
EQUIVALENCE = Vocabulary.of({"E": 2})

PROFILE_GRAMMAR = r"""
    start: group ("," group)*
    group: "(" CARD "x"i CARD ")"

    CARD: /aleph[01]|omega|[0-9]+/i

    %import common.WS
    %ignore WS
"""

_PARSER = Lark(PROFILE_GRAMMAR, parser="lalr")

Schema = Tuple[Tuple[SymCard, Tuple[SymCard, ...]], ...]
Move = Tuple[str, ...]


class _ProfileBuilder(Transformer):
    def CARD(self, token):
        return SymCard.of(str(token))

    def group(self, items):
        return (items[0], items[1])

    def start(self, items):
        return SymEqStructure(tuple(items))


def parse_profile(text: str) -> SymEqStructure:
    """Parse ``(size x count),(size x count)``, e.g. ``(aleph1 x aleph0),(aleph0 x 1)``."""
    try:
        return _ProfileBuilder().transform(_PARSER.parse(text))
    except UnexpectedInput as exc:
        raise ValidationException(
            f"Invalid profile {text!r} at column {exc.column}",
            details={"profile": text, "column": exc.column}
        )


def materialize(structure: SymEqStructure) -> Structure:
    """Finite structure over ``{E:2}`` with elements ``c{i}e{j}``."""
    universe, edges = [], []
    index = 0
    for size, count in structure.profile:
        if not (size.finite and count.finite):
            raise ValidationException(f"Cannot materialize infinite profile {structure}")
        for _ in range(count.value):
            members = [f"c{index}e{j}" for j in range(size.value)]
            universe.extend(members)
            edges.extend((a, b) for a in members for b in members)
            index += 1
    return Structure.create(EQUIVALENCE, universe, {"E": edges})


def _total(counts) -> SymCard:
    return reduce(lambda a, b: a + b, counts, ZERO)


def _state_from_pins(left: SymEqStructure, right: SymEqStructure,
                     pairs: Sequence[Tuple[SymPin, SymPin]]) -> SymState:
    elements: Dict[tuple, tuple] = {}
    images: Dict[tuple, tuple] = {}
    classes: Dict[tuple, tuple] = {}
    class_images: Dict[tuple, tuple] = {}
    for a, b in pairs:
        ea, eb = (a.class_ref, a.element), (b.class_ref, b.element)
        if elements.setdefault(ea, eb) != eb or images.setdefault(eb, ea) != ea:
            raise ValidationException(f"Inconsistent pins {a.name} -> {b.name}: not injective")
        if classes.setdefault(a.class_ref, b.class_ref) != b.class_ref \
                or class_images.setdefault(b.class_ref, a.class_ref) != a.class_ref:
            raise ValidationException(f"Pins {a.name} -> {b.name} do not respect the equivalence classes")

    pinned: Dict[tuple, int] = {}
    for ea in elements:
        pinned[ea[0]] = pinned.get(ea[0], 0) + 1
    links = [(ca[0], cb[0], pinned[ca]) for ca, cb in classes.items()]

    def untouched(structure: SymEqStructure, touched) -> Dict[SymCard, SymCard]:
        counts = structure.counts
        for size, _ in touched:
            counts[size] = counts[size] - ONE
        return counts

    return SymState.build(untouched(left, classes), untouched(right, class_images), links)


def _links_fit(state: SymState) -> bool:
    return all(left <= right for left, right, _ in state.links)


def _threshold_fit(state: SymState) -> bool:
    for size, _ in state.left:
        need = _total(c for s, c in state.left if s >= size)
        room = _total(c for s, c in state.right if s >= size)
        if need > room:
            return False
    return True


def _schema_fits(state: SymState, schema: Schema) -> bool:
    """Hall's condition for sending each size group into its target groups."""
    right = dict(state.right)
    left = dict(state.left)
    if {s for s, _ in schema} != set(left):
        return False
    if any(t < s or t not in right for s, ts in schema for t in ts):
        return False
    for r in range(1, len(schema) + 1):
        for subset in combinations(schema, r):
            need = _total(left[s] for s, _ in subset)
            targets = set(chain.from_iterable(ts for _, ts in subset))
            if need > _total(right[t] for t in targets):
                return False
    return True


def _schemas(state: SymState) -> List[Schema]:
    options = []
    for size, _ in state.left:
        targets = [t for t, _ in state.right if t >= size]
        subsets = [tuple(c) for r in range(1, len(targets) + 1) for c in combinations(targets, r)]
        options.append([(size, ts) for ts in subsets])
    return [tuple(choice) for choice in product(*options) if _schema_fits(state, tuple(choice))]


def _moves(state: SymState, schema: Schema) -> List[Tuple[Move, SymState]]:
    moves: List[Tuple[Move, SymState]] = []
    if state.links:
        moves.append((("pinned",), state))
    seen = set()
    for i, (left, right, k) in enumerate(state.links):
        if left > SymCard.of(k) and (left, right, k) not in seen:
            seen.add((left, right, k))
            links = state.links[:i] + ((left, right, k + 1),) + state.links[i + 1:]
            moves.append((("touched", str(left), str(right), str(k)),
                          SymState.build(dict(state.left), dict(state.right), links)))
    for size, targets in schema:
        for target in targets:
            left, right = dict(state.left), dict(state.right)
            left[size] = left[size] - ONE
            right[target] = right[target] - ONE
            moves.append((("fresh", str(size), str(target)),
                          SymState.build(left, right, state.links + ((size, target, 1),))))
    return moves


def _feasible(state: SymState) -> bool:
    return _links_fit(state) and _threshold_fit(state)


def sym_embedding_exists(source: SymEqStructure, target: SymEqStructure,
                         pin_map: Optional[Mapping[str, str]] = None) -> bool:
    """
    Decide whether an embedding extends the pin map.

    Pinned classes must land in classes at least as large; the remaining
    classes need, for every size s, no more classes of size >= s than the
    target still has available.

    Raises:
        ValidationException: If a pin is unknown or the map is not injective
            or does not respect classes
    """
    pairs = [(source.pin(a), target.pin(b)) for a, b in (pin_map or {}).items()]
    return _feasible(_state_from_pins(source, target, pairs))


class SymbolicGame:
    """Memoized solver over symbolic positions."""

    def __init__(self, left: SymEqStructure, right: SymEqStructure):
        if len(left.pins) != len(right.pins):
            raise ValidationException("Pinned tuples must have equal length")
        self.left = left
        self.right = right
        self.start = _state_from_pins(left, right, list(zip(left.pins, right.pins)))
        self._values: Dict[Tuple[SymState, int], bool] = {}

    @staticmethod
    def schemas(state: SymState, side: str) -> List[Schema]:
        oriented = state if side == LEFT else state.flipped()
        if not _links_fit(oriented):
            return []
        return _schemas(oriented)

    @staticmethod
    def moves(state: SymState, side: str, schema: Schema) -> List[Tuple[Move, SymState]]:
        if side == LEFT:
            return _moves(state, schema)
        return [(move, after.flipped()) for move, after in _moves(state.flipped(), schema)]

    def _good(self, state: SymState, side: str, schema: Schema, rounds: int) -> bool:
        return all(self.value(after, rounds - 1) for _, after in self.moves(state, side, schema))

    def value(self, state: SymState, rounds: int) -> bool:
        if rounds <= 0:
            return True
        key = (state, rounds)
        if key not in self._values:
            self._values[key] = all(
                any(self._good(state, side, s, rounds) for s in self.schemas(state, side))
                for side in (LEFT, RIGHT)
            )
        return self._values[key]

    def principal_variation(self, state: SymState, rounds: int) -> List[SymbolicRound]:
        line: List[SymbolicRound] = []
        while rounds > 0:
            forward, backward = self.schemas(state, LEFT), self.schemas(state, RIGHT)
            if not forward or not backward:
                line.append(SymbolicRound(forward[0] if forward else None, backward[0] if backward else None))
                break
            if self.value(state, rounds):
                f = next(s for s in forward if self._good(state, LEFT, s, rounds))
                g = next(s for s in backward if self._good(state, RIGHT, s, rounds))
                side, schema = LEFT, f
                move, after = self.moves(state, LEFT, f)[0]
            else:
                f, g = forward[0], backward[0]
                side = LEFT if not any(self._good(state, LEFT, s, rounds) for s in forward) else RIGHT
                schema = f if side == LEFT else g
                move, after = next((m, a) for m, a in self.moves(state, side, schema)
                                   if not self.value(a, rounds - 1))
            line.append(SymbolicRound(f, g, side, move))
            state = after
            rounds -= 1
        return line


def sym_game(left: SymEqStructure, right: SymEqStructure, rounds: int,
             cap: Optional[int] = None) -> GameOutcome:
    """
    Solve the ``rounds``-round embedding game between symbolic equivalence structures.

    Pins of the two structures are paired by position and form the starting
    tuples.

    Raises:
        ResourceCapExceeded: If ``rounds`` exceeds the round cap (default ``EMBQ_CAP_ROUNDS``)
        ValidationException: If the pins are inconsistent
    """
    cap = settings.CAP_ROUNDS if cap is None else cap
    if rounds < 0:
        raise ValidationException(f"Round count must be non-negative, got {rounds}")
    if rounds > cap:
        logger.warning(f"Symbolic game refused for {rounds} rounds")
        raise ResourceCapExceeded("rounds", cap, rounds)
    game = SymbolicGame(left, right)
    survives = game.value(game.start, rounds)
    witness = tuple(game.principal_variation(game.start, rounds))
    logger.info(f"Symbolic game {left} vs {right}, {rounds} rounds: survives={survives}")
    return GameOutcome(survives, rounds, witness, symbolic=True)


def replay_symbolic(outcome: GameOutcome, left: SymEqStructure, right: SymEqStructure) -> bool:
    """Re-check a symbolic witness move by move against the abstract rules."""
    game = SymbolicGame(left, right)
    state = game.start
    for i, record in enumerate(outcome.witness):
        if record.forward is None or record.backward is None:
            side = LEFT if record.forward is None else RIGHT
            last = i == len(outcome.witness) - 1
            return last and not outcome.survives and not game.schemas(state, side)
        for side, schema in ((LEFT, record.forward), (RIGHT, record.backward)):
            if schema not in game.schemas(state, side):
                return False
        if record.side is not None:
            schema = record.forward if record.side == LEFT else record.backward
            options = dict(game.moves(state, record.side, schema))
            if tuple(record.move) not in options:
                return False
            state = options[tuple(record.move)]
    return outcome.survives and len(outcome.witness) == outcome.rounds
