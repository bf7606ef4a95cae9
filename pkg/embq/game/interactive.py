"""
Interactive Play
================

Terminal play against the solver. The human takes one role and the engine
plays the other from the memoized game table. Every round is recorded as
option indices plus Spoiler's move, so a transcript replays exactly.
"""

import logging
from typing import Callable, List, Optional, Tuple, Union

from embq.core.models import Structure
from embq.core.schemas import StructureSchema
from embq.game.finite import LEFT, RIGHT, FiniteGame
from embq.game.models import SymEqStructure
from embq.game.schemas import TranscriptSchema, TurnSchema
from embq.game.symbolic import SymbolicGame, parse_profile
from embq.shared.exceptions import ValidationException, VerificationFailure

logger = logging.getLogger(__name__)

SIDES = (LEFT, RIGHT)


class _FiniteArena:
    kind = "finite"

    def __init__(self, left: Structure, right: Structure, width: Optional[int] = None):
        self.game = FiniteGame(left, right, width)
        self.start = frozenset()

    def options(self, state, side):
        return self.game.embeddings(side, state)

    @staticmethod
    def describe(option) -> str:
        return ", ".join(f"{a}->{b}" for a, b in option.items())

    def moves(self, state, side, option):
        return [(m, self.game.advance(state, side, option, m)) for m in self.game.moves(side)]

    def apply(self, state, side, option, move):
        universe = (self.game.left if side == LEFT else self.game.right).universe
        if not move or len(move) > self.game.width:
            raise ValidationException(f"Pick between 1 and {self.game.width} elements")
        unknown = [e for e in move if e not in universe]
        if unknown:
            raise ValidationException(f"Unknown {side} elements {unknown}")
        return self.game.advance(state, side, option, tuple(move))

    def parse_move(self, state, side, option, text: str) -> Tuple[str, ...]:
        return tuple(e.strip() for e in text.split(",") if e.strip())


class _SymbolicArena:
    kind = "symbolic"

    def __init__(self, left: SymEqStructure, right: SymEqStructure):
        if left.pins or right.pins:
            raise ValidationException("Interactive symbolic play starts from unpinned profiles")
        self.game = SymbolicGame(left, right)
        self.start = self.game.start

    def options(self, state, side):
        return self.game.schemas(state, side)

    @staticmethod
    def describe(option) -> str:
        return "; ".join(f"{size} -> {{{', '.join(str(t) for t in targets)}}}" for size, targets in option)

    def moves(self, state, side, option):
        return self.game.moves(state, side, option)

    def apply(self, state, side, option, move):
        options = dict(self.moves(state, side, option))
        if tuple(move) not in options:
            raise ValidationException(f"Illegal move {' '.join(move)}")
        return options[tuple(move)]

    def parse_move(self, state, side, option, text: str) -> Tuple[str, ...]:
        text = text.strip()
        if text.isdigit():
            moves = self.moves(state, side, option)
            index = int(text)
            if not 0 <= index < len(moves):
                raise ValidationException(f"Move index {index} out of range")
            return moves[index][0]
        return tuple(text.split())


def _arena(left, right, width: Optional[int] = None):
    if isinstance(left, SymEqStructure) and isinstance(right, SymEqStructure):
        return _SymbolicArena(left, right)
    if isinstance(left, Structure) and isinstance(right, Structure):
        return _FiniteArena(left, right, width)
    raise ValidationException("Play needs two finite or two symbolic structures")


def _value(arena, state, rounds: int) -> bool:
    return arena.game.value(state, rounds)


def _engine_duplicator(arena, state, side: str, rounds: int) -> Optional[int]:
    options = arena.options(state, side)
    for i, option in enumerate(options):
        if all(_value(arena, after, rounds - 1) for _, after in arena.moves(state, side, option)):
            return i
    return 0 if options else None


def _engine_spoiler(arena, state, chosen, rounds: int) -> Tuple[str, Tuple[str, ...]]:
    for side in SIDES:
        for move, after in arena.moves(state, side, chosen[side]):
            if not _value(arena, after, rounds - 1):
                return side, move
    return LEFT, arena.moves(state, LEFT, chosen[LEFT])[0][0]


def _ask(prompt: str, parse, input_fn, output_fn):
    while True:
        text = input_fn(prompt)
        try:
            return parse(text)
        except (ValidationException, ValueError, IndexError) as exc:
            output_fn(f"Invalid input: {getattr(exc, 'message', exc)}")


def play_interactive(left: Union[Structure, SymEqStructure], right: Union[Structure, SymEqStructure],
                     rounds: int, human: str = "spoiler", width: Optional[int] = None,
                     input_fn: Callable[[str], str] = input,
                     output_fn: Callable[[str], None] = print) -> TranscriptSchema:
    """
    Play the embedding game with a human in one role.

    Invalid input is reported and asked again. A human Duplicator picks
    options by index; a human Spoiler types a side and either elements
    (``left a,b``) or, in the symbolic game, a move index or descriptor.

    Returns:
        TranscriptSchema that ``replay_transcript`` re-executes
    """
    if human not in ("spoiler", "duplicator"):
        raise ValidationException(f"Unknown role {human!r}")
    arena = _arena(left, right, width)
    state = arena.start
    turns: List[TurnSchema] = []
    survives = True

    for number in range(1, rounds + 1):
        remaining = rounds - number + 1
        output_fn(f"Round {number} of {rounds}")
        indices = {}
        chosen = {}
        for side in SIDES:
            options = arena.options(state, side)
            if not options:
                indices[side] = None
                continue
            if human == "duplicator":
                for i, option in enumerate(options):
                    output_fn(f"  [{i}] {arena.describe(option)}")

                def pick(text, options=options):
                    index = int(text)
                    if not 0 <= index < len(options):
                        raise ValidationException(f"Option {index} out of range")
                    return index
                indices[side] = _ask(f"{side} embedding> ", pick, input_fn, output_fn)
            else:
                indices[side] = _engine_duplicator(arena, state, side, remaining)
            chosen[side] = options[indices[side]]
            output_fn(f"Duplicator {side}: {arena.describe(chosen[side])}")

        if indices[LEFT] is None or indices[RIGHT] is None:
            output_fn(f"Duplicator has no embedding in round {number}: Spoiler wins")
            turns.append(TurnSchema(forward=indices[LEFT], backward=indices[RIGHT]))
            survives = False
            break

        if human == "spoiler":
            for side in SIDES:
                for i, (move, _) in enumerate(arena.moves(state, side, chosen[side])):
                    output_fn(f"  {side} [{i}] {' '.join(move)}")

            def parse(text):
                side, _, rest = text.strip().partition(" ")
                if side not in SIDES:
                    raise ValidationException("Start with 'left' or 'right'")
                move = arena.parse_move(state, side, chosen[side], rest)
                return side, move, arena.apply(state, side, chosen[side], move)
            side, move, state = _ask("spoiler> ", parse, input_fn, output_fn)
        else:
            side, move = _engine_spoiler(arena, state, chosen, remaining)
            state = arena.apply(state, side, chosen[side], move)
        output_fn(f"Spoiler {side}: {' '.join(move)}")
        turns.append(TurnSchema(forward=indices[LEFT], backward=indices[RIGHT], side=side, move=list(move)))

    if survives:
        output_fn(f"Duplicator survives {rounds} rounds")
    logger.info(f"Interactive {arena.kind} game finished: survives={survives}")
    return TranscriptSchema(
        kind=arena.kind,
        human=human,
        rounds=rounds,
        left=str(left) if arena.kind == "symbolic" else StructureSchema.from_structure(left),
        right=str(right) if arena.kind == "symbolic" else StructureSchema.from_structure(right),
        width=width,
        turns=turns,
        survives=survives,
    )


def replay_transcript(transcript: TranscriptSchema) -> bool:
    """
    Re-execute a transcript and return whether Duplicator survived.

    Raises:
        VerificationFailure: If a recorded choice is illegal or the result differs
    """
    if transcript.kind == "symbolic":
        arena = _arena(parse_profile(transcript.left), parse_profile(transcript.right))
    else:
        arena = _arena(transcript.left.to_structure(), transcript.right.to_structure(), transcript.width)
    state = arena.start
    survives = True
    for number, turn in enumerate(transcript.turns, start=1):
        chosen = {}
        for side, index in ((LEFT, turn.forward), (RIGHT, turn.backward)):
            options = arena.options(state, side)
            if index is None:
                if options:
                    raise VerificationFailure(f"Round {number}: {side} options exist but none was recorded")
                survives = False
                continue
            if not 0 <= index < len(options):
                raise VerificationFailure(f"Round {number}: {side} option {index} does not exist")
            chosen[side] = options[index]
        if not survives:
            break
        try:
            state = arena.apply(state, turn.side, chosen[turn.side], tuple(turn.move))
        except (ValidationException, KeyError) as exc:
            raise VerificationFailure(f"Round {number}: illegal move {turn.move}: {exc}")
    if survives and len(transcript.turns) != transcript.rounds:
        raise VerificationFailure("Transcript stops before the last round")
    if survives != transcript.survives:
        raise VerificationFailure(f"Replay gives survives={survives}, transcript says {transcript.survives}")
    return survives
