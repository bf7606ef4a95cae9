from itertools import chain, combinations, combinations_with_replacement, permutations, product

import numpy as np
import pytest

from embq.core.catalog import GRAPH
from embq.core.canonical import enumerate_structures
from embq.game.finite import duplicator_survives, min_distinguishing_round
from embq.game.interactive import play_interactive, replay_transcript
from embq.game.models import GameOutcome, Position, SymCard, SymPin
from embq.game.schemas import GameOutcomeSchema
from embq.game.symbolic import materialize, parse_profile, sym_embedding_exists, sym_game
from embq.game.witness import replay_witness
from embq.logic.evaluator import evaluate
from embq.logic.syntax import quantifier_rank
from embq.morphism.engine import bi_embeddable, check_embedding, embeds, is_isomorphic
from embq.shared.exceptions import ResourceCapExceeded, ValidationException, VerificationFailure
from embq.zeroone.models import SampleConfig
from embq.zeroone.sampling import sample_random_structure

E0 = "(aleph1 x aleph0)"
E1 = "(aleph1 x aleph0),(aleph0 x 1)"


def _embeddings(source, target, pins):
    for images in permutations(target.universe, source.size):
        mapping = dict(zip(source.universe, images))
        if all(mapping[a] == b for a, b in pins) and check_embedding(source, target, mapping):
            yield mapping


def _subsets(universe):
    return chain.from_iterable(combinations(universe, r) for r in range(len(universe) + 1))


def naive_survives(left, right, pins, rounds):
    """Unmemoized game value with Spoiler allowed tuples of every length."""
    if rounds == 0:
        return True
    sides = ((left, right, pins, False), (right, left, {(b, a) for a, b in pins}, True))
    for source, target, oriented, backward in sides:
        def after(f, move):
            return pins | {(f[c], c) if backward else (c, f[c]) for c in move}
        if not any(
            all(naive_survives(left, right, after(f, move), rounds - 1) for move in _subsets(source.universe))
            for f in _embeddings(source, target, oriented)
        ):
            return False
    return True


def test_identical_structures_survive(k3):
    """Test that Duplicator survives any number of rounds on K3 vs K3."""
    outcome = duplicator_survives(Position.start(k3, k3), 99)
    assert outcome.survives
    assert outcome.losing_round is None
    assert replay_witness(outcome, k3, k3)


def test_missing_embedding_loses_in_round_one(k2, k3):
    """Test that K3 does not embed into K2."""
    outcome = duplicator_survives(Position.start(k2, k3), 1)
    assert not outcome
    assert outcome.losing_round == 1
    assert outcome.witness[0].backward is None
    assert replay_witness(outcome, k2, k3)


def test_zero_rounds_always_survive(k2, k3):
    """Test that the 0-round game is trivially won."""
    assert duplicator_survives(Position.start(k2, k3), 0).survives


def test_pinned_start_position(k3):
    """Test a game starting from pinned tuples."""
    position = Position(k3, ("v0",), k3, ("v1",))
    outcome = duplicator_survives(position, 3)
    assert outcome.survives
    assert replay_witness(outcome, position)


def test_inconsistent_start_position(k3, i2k1):
    """Test that a start pairing an edge with a non-edge loses at once."""
    position = Position(k3, ("v0", "v1"), i2k1, ("v0", "v1"))
    assert not duplicator_survives(position, 1).survives


def test_position_rejects_unequal_tuples(k3):
    """Test that pinned tuples must have equal length."""
    with pytest.raises(ValidationException):
        Position(k3, ("v0",), k3, ())


def test_game_size_cap(pentagon):
    """Test that the size cap applies to game structures."""
    with pytest.raises(ResourceCapExceeded):
        duplicator_survives(Position.start(pentagon, pentagon), 1, cap=4)


def test_tampered_witness_is_rejected(k2, k3):
    """Test that replay refuses a witness claiming the wrong result."""
    outcome = duplicator_survives(Position.start(k2, k3), 1)
    forged = GameOutcome(True, outcome.rounds, outcome.witness)
    assert not replay_witness(forged, k2, k3)


def test_min_distinguishing_round(k2, i2k1, k3):
    """Test the least distinguishing round and the cap."""
    assert min_distinguishing_round(k2, i2k1).round == 1
    result = min_distinguishing_round(k3, k3, cap=3)
    assert result.capped
    assert result.cap == 3


def test_solver_matches_naive_game():
    """Test the solver against an unmemoized game over all graphs with at most 2 vertices.

    The 13 isomorphism classes cover all 256 labeled pairs on two vertices up to
    isomorphism, and game values are invariant under isomorphism.
    """
    structures = list(enumerate_structures(GRAPH, 2))
    assert len(structures) == 13
    for left, right in product(structures, repeat=2):
        for rounds in (1, 2):
            expected = naive_survives(left, right, frozenset(), rounds)
            assert duplicator_survives(Position.start(left, right), rounds).survives == expected


@pytest.mark.slow
def test_solver_matches_naive_game_exhaustively():
    """Test three rounds on small graphs and two rounds on seeded random pairs of size at most 3."""
    structures = list(enumerate_structures(GRAPH, 2))
    for left, right in product(structures, repeat=2):
        expected = naive_survives(left, right, frozenset(), 3)
        assert duplicator_survives(Position.start(left, right), 3).survives == expected
    rng = np.random.default_rng(17)
    for index in range(100):
        left, right = (
            sample_random_structure(SampleConfig(GRAPH, int(rng.integers(1, 4)), 1, seed=int(rng.integers(1000))), index)
            for _ in range(2)
        )
        for rounds in (1, 2):
            expected = naive_survives(left, right, frozenset(), rounds)
            assert duplicator_survives(Position.start(left, right), rounds).survives == expected


def test_spoiler_width_one():
    """Test that a narrower Spoiler never does better than a wide one."""
    structures = list(enumerate_structures(GRAPH, 2))
    for left, right in product(structures, repeat=2):
        wide = duplicator_survives(Position.start(left, right), 2)
        narrow = duplicator_survives(Position.start(left, right), 2, width=1)
        assert narrow.survives or not wide.survives


@pytest.mark.parametrize("max_size", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_one_round_is_bi_embeddability(max_size):
    """Test that Duplicator survives one round iff the structures are bi-embeddable."""
    structures = list(enumerate_structures(GRAPH, max_size))
    for left, right in product(structures, repeat=2):
        assert duplicator_survives(Position.start(left, right), 1).survives == bi_embeddable(left, right)


@pytest.mark.parametrize("max_size", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_survival_is_monotone_in_rounds(max_size):
    """Test that surviving n + 1 rounds implies surviving n rounds."""
    structures = list(enumerate_structures(GRAPH, max_size))
    for left, right in product(structures, repeat=2):
        values = [duplicator_survives(Position.start(left, right), n).survives for n in range(4)]
        assert values == sorted(values, reverse=True), (left, right)


@pytest.mark.parametrize("max_size", [2, 3])
def test_finite_bi_embeddability_is_isomorphism(max_size):
    """Test that finite structures embed into each other exactly when isomorphic."""
    structures = list(enumerate_structures(GRAPH, max_size))
    for left, right in product(structures, repeat=2):
        assert bi_embeddable(left, right) == is_isomorphic(left, right)


@pytest.mark.parametrize("seed", [5, 23])
def test_non_isomorphic_pairs_split_in_round_one(seed):
    """Test that seeded non-isomorphic pairs are distinguished in the first round."""
    rng = np.random.default_rng(seed)
    checked = 0
    for index in range(60):
        left, right = (
            sample_random_structure(SampleConfig(GRAPH, int(rng.integers(1, 5)), 1, seed=seed), 2 * index + side)
            for side in range(2)
        )
        if is_isomorphic(left, right):
            continue
        assert min_distinguishing_round(left, right).round == 1
        checked += 1
    assert checked


def test_outcome_schema(k2, k3):
    """Test the JSON report of an outcome."""
    schema = GameOutcomeSchema.from_outcome(duplicator_survives(Position.start(k2, k3), 1))
    assert schema.losing_round == 1
    assert schema.witness[0].backward is None


def test_cardinal_arithmetic():
    """Test that infinite cardinals absorb finite arithmetic."""
    aleph0 = SymCard.of("aleph0")
    assert aleph0 + 1 == aleph0
    assert aleph0 - 1 == aleph0
    assert SymCard.of(2) + 3 == SymCard.of(5)
    assert SymCard.of(1) < aleph0 < SymCard.of("aleph1")
    assert not SymCard.of(0)
    with pytest.raises(ValidationException):
        SymCard.of(1) - 2


def test_parse_profile_merges_groups():
    """Test that groups are sorted and equal sizes merged."""
    profile = parse_profile("(2 x 1), (aleph0 x 1), (2 x 3)")
    assert profile.counts == {SymCard.of(2): SymCard.of(4), SymCard.of("aleph0"): SymCard.of(1)}
    assert str(profile) == "(2 x 4),(aleph0 x 1)"


def test_parse_profile_error():
    """Test that malformed profiles report a column."""
    with pytest.raises(ValidationException) as excinfo:
        parse_profile("(2 x 1) (3 x 1)")
    assert excinfo.value.details["column"] is not None


def test_symbolic_bi_embeddable():
    """Test that the two profiles embed into each other."""
    left, right = parse_profile(E0), parse_profile(E1)
    assert sym_embedding_exists(left, right)
    assert sym_embedding_exists(right, left)


def test_symbolic_pins_respect_class_sizes():
    """Test that a class cannot be sent into a smaller class."""
    left = parse_profile(E0).with_pins([SymPin("a", SymCard.of("aleph1"), 0, 0)])
    right = parse_profile(E1).with_pins([SymPin("b", SymCard.of("aleph0"), 0, 0)])
    assert not sym_embedding_exists(left, right, {"a": "b"})
    assert sym_embedding_exists(right, left, {"b": "a"})


def test_symbolic_pin_validation():
    """Test pins outside the profile."""
    with pytest.raises(ValidationException):
        parse_profile("(2 x 1)").with_pins([SymPin("a", SymCard.of(3), 0, 0)])
    with pytest.raises(ValidationException):
        parse_profile("(2 x 1)").with_pins([SymPin("a", SymCard.of(2), 0, 2)])


def test_symbolic_game_distinguishes_in_two_rounds():
    """Test that the bi-embeddable profiles survive one round but not two."""
    left, right = parse_profile(E0), parse_profile(E1)
    assert sym_game(left, right, 1).survives
    outcome = sym_game(left, right, 2)
    assert not outcome.survives
    assert outcome.losing_round == 2
    assert outcome.symbolic
    assert outcome.witness[0].side == "right"
    assert outcome.witness[0].move == ("fresh", "aleph0", "aleph1")
    assert replay_witness(outcome, left, right)


def test_symbolic_game_identical_profiles():
    """Test that identical profiles survive up to the round cap."""
    profile = parse_profile(E1)
    outcome = sym_game(profile, profile, 4)
    assert outcome.survives
    assert replay_witness(outcome, profile, profile)


def test_symbolic_round_cap():
    """Test that the round cap is enforced."""
    profile = parse_profile(E0)
    with pytest.raises(ResourceCapExceeded):
        sym_game(profile, profile, 5)


def test_symbolic_witness_needs_symbolic_structures(k3):
    """Test that a symbolic witness does not replay on finite structures."""
    outcome = sym_game(parse_profile(E0), parse_profile(E0), 1)
    with pytest.raises(ValidationException):
        replay_witness(outcome, k3, k3)


def test_finite_profiles_agree_with_embeddings():
    """Test symbolic embeddability against materialized finite structures."""
    profiles = ["(1 x 1)", "(1 x 2)", "(2 x 1)", "(2 x 1),(1 x 1)", "(3 x 1)", "(2 x 2)", "(1 x 3)"]
    for a, b in product(profiles, repeat=2):
        source, target = parse_profile(a), parse_profile(b)
        assert sym_embedding_exists(source, target) == embeds(materialize(source), materialize(target)), (a, b)


def small_profiles():
    """Every profile with one to four classes of size at most three."""
    for count in range(1, 5):
        for sizes in combinations_with_replacement(range(1, 4), count):
            yield parse_profile(",".join(f"({size} x 1)" for size in sizes))


def pin_tuples(profile):
    """Representative pinned tuples as ``((size, index, element), element name)`` pairs."""
    classes = [(size, i) for size, count in profile.profile for i in range(count.value)]

    def pin(k, element):
        size, index = classes[k]
        return (size, index, element), f"c{k}e{element}"

    tuples = [(pin(k, 0),) for k in range(len(classes))]
    large = next((k for k, (size, _) in enumerate(classes) if size.value > 1), None)
    if large is not None:
        tuples.append((pin(large, 0), pin(large, 1)))
    if len(classes) > 1:
        tuples.append((pin(0, 0), pin(len(classes) - 1, 0)))
    return tuples


def test_all_small_profiles_agree_with_embeddings():
    """Test symbolic embeddability on every small profile pair against the materialized structures."""
    profiles = list(small_profiles())
    assert len(profiles) == 34
    for source, target in product(profiles, repeat=2):
        expected = embeds(materialize(source), materialize(target))
        assert sym_embedding_exists(source, target) == expected, (str(source), str(target))


@pytest.mark.slow
def test_pinned_profiles_agree_with_embeddings():
    """Test pinned symbolic embeddability against materialized structures with the same pins."""
    profiles = list(small_profiles())
    for source, target in product(profiles, repeat=2):
        left, right = materialize(source), materialize(target)
        for left_tuple in pin_tuples(source):
            for right_tuple in pin_tuples(target):
                if len(left_tuple) != len(right_tuple):
                    continue
                pinned_source = source.with_pins([SymPin(f"a{i}", *ref) for i, (ref, _) in enumerate(left_tuple)])
                pinned_target = target.with_pins([SymPin(f"b{i}", *ref) for i, (ref, _) in enumerate(right_tuple)])
                pin_map = {f"a{i}": f"b{i}" for i in range(len(left_tuple))}
                pins = {a: b for (_, a), (_, b) in zip(left_tuple, right_tuple)}
                try:
                    symbolic = sym_embedding_exists(pinned_source, pinned_target, pin_map)
                except ValidationException:
                    # pins that split or merge classes
                    symbolic = False
                assert symbolic == embeds(left, right, pins), (str(source), left_tuple, str(target), right_tuple)


@pytest.mark.slow
def test_symbolic_game_matches_materialized_game():
    """Test the symbolic game against the finite solver on materialized profiles."""
    profiles = [p for p in small_profiles() if sum(size.value for size, _ in p.profile) <= 4]
    for left, right in product(profiles, repeat=2):
        position = Position.start(materialize(left), materialize(right))
        for rounds in (1, 2, 3):
            expected = duplicator_survives(position, rounds).survives
            assert sym_game(left, right, rounds).survives == expected, (str(left), str(right), rounds)


def test_materialize_refuses_infinite_profiles():
    """Test that only finite profiles materialize."""
    with pytest.raises(ValidationException):
        materialize(parse_profile(E0))


def scripted(answers):
    """Input function returning the given answers in order."""
    queue = list(answers)
    return lambda prompt: queue.pop(0)


def test_interactive_spoiler_wins():
    """Test a human Spoiler winning the symbolic game and replaying it."""
    lines = []
    transcript = play_interactive(
        parse_profile(E0), parse_profile(E1), 2, human="spoiler",
        input_fn=scripted(["middle fresh", "right fresh aleph0 aleph1"]), output_fn=lines.append,
    )
    assert transcript.survives is False
    assert len(transcript.turns) == 2
    assert transcript.turns[1].forward is None
    assert any(line.startswith("Invalid input") for line in lines)
    assert replay_transcript(transcript) is False


def test_interactive_duplicator_survives(k3):
    """Test a human Duplicator on K3 vs K3."""
    transcript = play_interactive(k3, k3, 1, human="duplicator",
                                  input_fn=scripted(["0", "0"]), output_fn=lambda line: None)
    assert transcript.survives
    assert replay_transcript(transcript) is True


def test_interactive_out_of_range_option(k3):
    """Test that an out-of-range option index is asked again."""
    lines = []
    transcript = play_interactive(k3, k3, 1, human="duplicator",
                                  input_fn=scripted(["9", "0", "0"]), output_fn=lines.append)
    assert transcript.turns[0].forward == 0
    assert any("out of range" in line for line in lines)


def test_replay_detects_tampering(k3):
    """Test that a transcript with a false result fails verification."""
    transcript = play_interactive(k3, k3, 1, human="duplicator",
                                  input_fn=scripted(["0", "0"]), output_fn=lambda line: None)
    forged = transcript.model_copy(update={"survives": False})
    with pytest.raises(VerificationFailure):
        replay_transcript(forged)


def test_interactive_unknown_role(k3):
    """Test that the role must be spoiler or duplicator."""
    with pytest.raises(ValidationException):
        play_interactive(k3, k3, 1, human="referee")


@pytest.mark.slow
def test_survival_implies_agreement(registry, random_formula, path3, pentagon):
    """Test that n surviving rounds imply agreement on embedding-closed formulas of rank n."""
    rng = np.random.default_rng(3)
    quantifiers = [registry[name] for name in ("QK2", "Exists", "Q2")]
    positions = [Position.start(a, b) for a, b in product(enumerate_structures(GRAPH, 2), repeat=2)]
    for structure in (path3, pentagon):
        positions.extend(Position(structure, (a,), structure, (b,))
                         for a, b in product(structure.universe, repeat=2))
    for position in positions:
        free = ["p"] if position.left_tuple else []
        for rounds in (1, 2):
            if not duplicator_survives(position, rounds).survives:
                continue
            for _ in range(200):
                formula = random_formula(rng, quantifiers, free, rounds)
                assert quantifier_rank(formula) <= rounds
                left = evaluate(position.left, formula, dict(zip(free, position.left_tuple)))
                right = evaluate(position.right, formula, dict(zip(free, position.right_tuple)))
                assert left == right, formula
