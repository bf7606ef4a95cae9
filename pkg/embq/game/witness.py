from typing import Union

from embq.core.models import Structure
from embq.game.finite import replay_finite
from embq.game.models import GameOutcome, Position, SymEqStructure
from embq.game.symbolic import replay_symbolic
from embq.shared.exceptions import ValidationException


def replay_witness(outcome: GameOutcome, left: Union[Position, Structure, SymEqStructure],
                   right: Union[Structure, SymEqStructure, None] = None) -> bool:
    """
    Replay an outcome's witness through the rules.

    Args:
        outcome: Result of ``duplicator_survives`` or ``sym_game``
        left: Starting Position, or the left structure
        right: Right structure when ``left`` is not a Position

    Returns:
        True iff every recorded move is legal and the line ends as claimed
    """
    if outcome.symbolic:
        if not isinstance(left, SymEqStructure) or not isinstance(right, SymEqStructure):
            raise ValidationException("A symbolic witness replays on symbolic structures")
        return replay_symbolic(outcome, left, right)
    if isinstance(left, Position):
        return replay_finite(outcome, left)
    if not isinstance(left, Structure) or not isinstance(right, Structure):
        raise ValidationException("A finite witness replays on finite structures")
    return replay_finite(outcome, Position.start(left, right))
