from embq.game.finite import FiniteGame, duplicator_survives, min_distinguishing_round
from embq.game.interactive import play_interactive, replay_transcript
from embq.game.models import (
    DistinguishingResult,
    FiniteRound,
    GameOutcome,
    Position,
    SymbolicRound,
    SymCard,
    SymEqStructure,
    SymPin,
)
from embq.game.symbolic import materialize, parse_profile, sym_embedding_exists, sym_game
from embq.game.witness import replay_witness

__all__ = [
    "DistinguishingResult",
    "FiniteGame",
    "FiniteRound",
    "GameOutcome",
    "Position",
    "SymCard",
    "SymEqStructure",
    "SymPin",
    "SymbolicRound",
    "duplicator_survives",
    "materialize",
    "min_distinguishing_round",
    "parse_profile",
    "play_interactive",
    "replay_transcript",
    "replay_witness",
    "sym_embedding_exists",
    "sym_game",
]
