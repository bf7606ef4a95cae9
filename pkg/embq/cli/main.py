"""
Command-Line Entry Point
========================

``embq <command> [options]``. Every command emits one report (JSON by
default) and exits with 0 for a positive answer, 1 for a negative one, 2 for
usage or input errors and 3 when a resource cap is hit.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from embq.core.catalog import GENERATORS, catalog_generate
from embq.core.models import Structure
from embq.core.schemas import StructureSchema, dump_structure, load_structure, load_vocabulary
from embq.game.finite import duplicator_survives, min_distinguishing_round
from embq.game.interactive import play_interactive
from embq.game.models import Position
from embq.game.schemas import DistinguishingReportSchema, GameOutcomeSchema
from embq.game.symbolic import parse_profile, sym_game
from embq.logic.evaluator import evaluate
from embq.logic.models import QApp
from embq.logic.parser import parse_formula
from embq.logic.quantifiers import QuantifierRegistry
from embq.logic.schemas import CheckReportSchema, load_registry
from embq.logic.syntax import format_formula, is_quantifier_free
from embq.morphism.engine import enumerate_morphisms, find_morphism
from embq.morphism.models import MorphismKind, MorphismQuery
from embq.morphism.schemas import MorphismReportSchema
from embq.qelim.elimination import eliminate_quantifiers, stabilize_formula, type_chain
from embq.qelim.homogeneity import is_quasi_homogeneous
from embq.qelim.models import Chain
from embq.qelim.schemas import (
    EliminationReportSchema,
    HomogeneityReportSchema,
    StabilizationReportSchema,
    TypeChainReportSchema,
)
from embq.shared.config import settings
from embq.shared.exceptions import (
    EXIT_NEGATIVE,
    EXIT_POSITIVE,
    ValidationException,
    global_exception_handler,
)
from embq.zeroone.estimate import estimate_series
from embq.zeroone.models import SampleConfig
from embq.zeroone.schemas import MuReportSchema, MuRowSchema

logger = logging.getLogger(__name__)

CAP_FLAGS = {
    "cap_size": "CAP_SIZE",
    "cap_enumeration": "CAP_ENUMERATION",
    "cap_rounds": "CAP_ROUNDS",
}


@dataclass
class RunConfig:
    """A parsed and validated invocation."""

    command: str
    fmt: str = "json"
    seed: int = 42
    jobs: int = 1
    caps: Dict[str, int] = field(default_factory=dict)
    registry: QuantifierRegistry = field(default_factory=QuantifierRegistry)
    structures: Dict[str, Any] = field(default_factory=dict)
    formula: Any = None
    args: argparse.Namespace = None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _pairs(text: Optional[str], what: str) -> Dict[str, str]:
    """Parse ``a=b,c=d``."""
    result: Dict[str, str] = {}
    if not text:
        return result
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise ValidationException(f"Malformed {what} entry {part!r}, expected key=value")
        result[key.strip()] = value.strip()
    return result


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--cap-size", type=_positive_int, default=argparse.SUPPRESS)
    common.add_argument("--cap-enumeration", type=_positive_int, default=argparse.SUPPRESS)
    common.add_argument("--cap-rounds", type=_positive_int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=_positive_int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="embq", parents=[common],
                                     description="Embedding-closed quantifiers on finite structures")
    commands = parser.add_subparsers(dest="command", required=True)

    embed = commands.add_parser("embed", parents=[common], help="search for a structure map")
    embed.add_argument("--from", dest="source", required=True)
    embed.add_argument("--to", dest="target", required=True)
    embed.add_argument("--kind", default="embedding", choices=("embedding", "hom", "iso", "homomorphism", "isomorphism"))
    embed.add_argument("--pin", default=None, help="a=b,c=d")
    embed.add_argument("--enumerate", type=_positive_int, default=None, metavar="N")

    check = commands.add_parser("check", parents=[common], help="evaluate a formula")
    check.add_argument("--structure", required=True)
    check.add_argument("--formula", required=True)
    check.add_argument("--quantifiers", default=None)
    check.add_argument("--assign", default=None, help="x=a,y=b")

    qe = commands.add_parser("qe", parents=[common], help="eliminate quantifiers on a homogeneous structure")
    qe.add_argument("--structure", required=True)
    qe.add_argument("--formula", required=True)
    qe.add_argument("--quantifiers", default=None)
    qe.add_argument("--variables", default=None, help="comma-separated free-variable order")

    homog = commands.add_parser("homog", parents=[common], help="check quasi-homogeneity")
    homog.add_argument("--structure", required=True)
    homog.add_argument("--kind", default="iso", choices=("iso", "embedding"))

    chain = commands.add_parser("chain", parents=[common], help="stabilize a formula along a chain")
    chain.add_argument("--structures", nargs="+", required=True)
    chain.add_argument("--formula", required=True)
    chain.add_argument("--quantifiers", default=None)

    game = commands.add_parser("game", parents=[common], help="solve or play the embedding game")
    game.add_argument("mode", nargs="?", choices=("solve", "play"), default="solve")
    game.add_argument("--left", default=None)
    game.add_argument("--right", default=None)
    game.add_argument("--symbolic", action="store_true")
    game.add_argument("--left-profile", default=None)
    game.add_argument("--right-profile", default=None)
    game.add_argument("--rounds", type=int, required=True)
    game.add_argument("--width", type=_positive_int, default=None)
    game.add_argument("--witness", action="store_true")
    game.add_argument("--distinguish", action="store_true", help="report the least distinguishing round")
    game.add_argument("--as", dest="human", choices=("spoiler", "duplicator"), default="spoiler")
    game.add_argument("--transcript", default=None, help="file to write the play transcript to")

    zeroone = commands.add_parser("zeroone", parents=[common], help="estimate asymptotic probabilities")
    zeroone.add_argument("--vocab", required=True)
    zeroone.add_argument("--formula", required=True)
    zeroone.add_argument("--quantifiers", default=None)
    zeroone.add_argument("--sizes", default="10,20,40")
    zeroone.add_argument("--samples", type=_positive_int, default=400)
    zeroone.add_argument("--p", type=float, default=0.5)

    catalog = commands.add_parser("catalog", parents=[common], help="catalog structures")
    catalog_commands = catalog.add_subparsers(dest="action", required=True)
    gen = catalog_commands.add_parser("gen", parents=[common], help="emit a catalog structure")
    gen.add_argument("name", choices=sorted(GENERATORS))
    gen.add_argument("--param", action="append", default=[], help="key=value")
    gen.add_argument("--out", default=None)
    return parser


def _configure_logging(verbose: int) -> None:
    level = {0: settings.LOG_LEVEL, 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def validate_inputs(args: argparse.Namespace) -> RunConfig:
    """
    Read files, check schemas, resolve quantifiers and apply caps.

    Flags override ``EMBQ_*`` environment values, which override defaults.

    Raises:
        ValidationException: On schema violations, with the field path
        NotFoundException: On missing files or unregistered quantifiers
        FormulaSyntaxException: On malformed formulas
    """
    for flag, name in CAP_FLAGS.items():
        if getattr(args, flag, None) is not None:
            setattr(settings, name, getattr(args, flag))
    config = RunConfig(
        command=args.command,
        fmt=getattr(args, "fmt", "json"),
        seed=getattr(args, "seed", settings.SEED),
        jobs=getattr(args, "jobs", settings.JOBS),
        caps=settings.caps,
        args=args,
    )
    if getattr(args, "quantifiers", None):
        config.registry = load_registry(args.quantifiers)

    if args.command == "embed":
        config.structures = {"source": load_structure(args.source), "target": load_structure(args.target)}
    elif args.command in ("check", "qe", "homog"):
        config.structures = {"structure": load_structure(args.structure)}
    elif args.command == "chain":
        config.structures = {"chain": [load_structure(p) for p in args.structures]}
    elif args.command == "game":
        if args.symbolic:
            if not (args.left_profile and args.right_profile):
                raise ValidationException("--symbolic needs --left-profile and --right-profile")
            config.structures = {"left": parse_profile(args.left_profile), "right": parse_profile(args.right_profile)}
        else:
            if not (args.left and args.right):
                raise ValidationException("game needs --left and --right structure files")
            config.structures = {"left": load_structure(args.left), "right": load_structure(args.right)}
    elif args.command == "zeroone":
        config.structures = {"vocab": load_vocabulary(args.vocab)}

    if getattr(args, "formula", None) is not None:
        if args.command == "zeroone":
            vocab = config.structures["vocab"]
        elif args.command == "chain":
            vocab = config.structures["chain"][0].vocab
        else:
            vocab = config.structures["structure"].vocab
        config.formula = parse_formula(args.formula, vocab, config.registry)
    return config


def _run_embed(config: RunConfig) -> Tuple[int, BaseModel]:
    args = config.args
    kind = MorphismKind.parse(args.kind)
    query = MorphismQuery.build(kind, config.structures["source"], config.structures["target"],
                                _pairs(args.pin, "pin"), args.enumerate)
    if args.enumerate:
        report = MorphismReportSchema.many(kind, enumerate_morphisms(query))
    else:
        report = MorphismReportSchema.single(kind, find_morphism(query))
    return (EXIT_POSITIVE if report.found else EXIT_NEGATIVE), report


def _run_check(config: RunConfig) -> Tuple[int, BaseModel]:
    assignment = _pairs(config.args.assign, "assignment")
    holds = evaluate(config.structures["structure"], config.formula, assignment)
    report = CheckReportSchema(formula=format_formula(config.formula), holds=holds, assignment=assignment)
    return (EXIT_POSITIVE if holds else EXIT_NEGATIVE), report


def _run_qe(config: RunConfig) -> Tuple[int, BaseModel]:
    structure = config.structures["structure"]
    variables = [v.strip() for v in config.args.variables.split(",")] if config.args.variables else None
    result = eliminate_quantifiers(structure, config.formula, variables)
    return EXIT_POSITIVE, EliminationReportSchema.from_result(format_formula(config.formula), result, structure.vocab)


def _run_homog(config: RunConfig) -> Tuple[int, BaseModel]:
    kind = MorphismKind.ISOMORPHISM if config.args.kind == "iso" else MorphismKind.EMBEDDING
    report = is_quasi_homogeneous(config.structures["structure"], kind)
    return (EXIT_POSITIVE if report else EXIT_NEGATIVE), HomogeneityReportSchema.from_report(report)


def _run_chain(config: RunConfig) -> Tuple[int, BaseModel]:
    chain = Chain.build(config.structures["chain"])
    formula = config.formula
    text = format_formula(formula)
    single = isinstance(formula, QApp) and formula.quantifier.embedding_closed \
        and all(is_quantifier_free(body) for _, body in formula.bindings)
    if single:
        report = type_chain(chain, formula)
        code = EXIT_POSITIVE if report.witnessed else EXIT_NEGATIVE
        return code, TypeChainReportSchema.from_report(text, report, chain.vocab)
    result = stabilize_formula(chain, formula)
    return EXIT_POSITIVE, StabilizationReportSchema.from_result(text, result, chain.vocab)


def _run_game(config: RunConfig) -> Tuple[int, BaseModel]:
    args = config.args
    left, right = config.structures["left"], config.structures["right"]
    if args.mode == "play":
        transcript = play_interactive(left, right, args.rounds, args.human, args.width)
        if args.transcript:
            Path(args.transcript).write_text(transcript.model_dump_json(indent=2), encoding="utf-8")
        return (EXIT_POSITIVE if transcript.survives else EXIT_NEGATIVE), transcript
    if args.distinguish and not args.symbolic:
        result = min_distinguishing_round(left, right, args.rounds)
        return (EXIT_POSITIVE if result.capped else EXIT_NEGATIVE), DistinguishingReportSchema.from_result(result)
    if args.symbolic:
        outcome = sym_game(left, right, args.rounds)
    else:
        outcome = duplicator_survives(Position.start(left, right), args.rounds, args.width)
    report = GameOutcomeSchema.from_outcome(outcome, with_witness=args.witness)
    return (EXIT_POSITIVE if outcome.survives else EXIT_NEGATIVE), report


def _run_zeroone(config: RunConfig) -> Tuple[int, BaseModel]:
    args = config.args
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise ValidationException(f"--sizes must be comma-separated integers, got {args.sizes!r}")
    sample = SampleConfig(config.structures["vocab"], 0, args.samples, config.seed, args.p)
    rows = [MuRowSchema.from_estimate(size, estimate)
            for size, estimate in estimate_series(config.formula, sample, sizes, config.jobs)]
    return EXIT_POSITIVE, MuReportSchema(formula=format_formula(config.formula), seed=config.seed, p=args.p, rows=rows)


def _run_catalog(config: RunConfig) -> Tuple[int, BaseModel]:
    args = config.args
    params = {}
    for entry in args.param:
        params.update(_pairs(entry, "param"))
    structure: Structure = catalog_generate(args.name, params)
    if args.out:
        Path(args.out).write_text(dump_structure(structure), encoding="utf-8")
    return EXIT_POSITIVE, StructureSchema.from_structure(structure)


HANDLERS: Dict[str, Callable[[RunConfig], Tuple[int, BaseModel]]] = {
    "embed": _run_embed,
    "check": _run_check,
    "qe": _run_qe,
    "homog": _run_homog,
    "chain": _run_chain,
    "game": _run_game,
    "zeroone": _run_zeroone,
    "catalog": _run_catalog,
}


def _render_text(payload: Any, indent: str = "") -> List[str]:
    lines = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{indent}{key}:")
                lines.extend(_render_text(value, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {value}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, (dict, list)):
                lines.append(f"{indent}-")
                lines.extend(_render_text(item, indent + "  "))
            else:
                lines.append(f"{indent}- {item}")
    else:
        lines.append(f"{indent}{payload}")
    return lines


def emit(report: Any, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    payload = report.model_dump(mode="json") if isinstance(report, BaseModel) else report
    if fmt == "text":
        stream.write("\n".join(_render_text(payload)) + "\n")
    else:
        stream.write(json.dumps(payload, indent=2) + "\n")


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv``, run the command and emit its report.

    Returns:
        Exit code: 0 positive, 1 negative, 2 usage or input error, 3 cap exceeded
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(getattr(args, "verbose", 0))
    fmt = getattr(args, "fmt", "json")
    saved = {name: getattr(settings, name) for name in CAP_FLAGS.values()}
    try:
        config = validate_inputs(args)
        code, report = HANDLERS[config.command](config)
    except Exception as exc:
        code, envelope = global_exception_handler(exc)
        emit(envelope, fmt, sys.stderr)
        return code
    finally:
        for name, value in saved.items():
            setattr(settings, name, value)
    emit(report, fmt)
    logger.info(f"{args.command} finished with exit code {code}")
    return code


def main() -> None:
    sys.exit(dispatch())
