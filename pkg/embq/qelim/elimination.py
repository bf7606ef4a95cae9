"""
Quantifier Elimination
======================

On a quasi-homogeneous structure a formula is equivalent to the disjunction
of the atomic types realized by tuples satisfying it. Along a chain of such
structures, a quantifier application over quantifier-free bodies collects a
growing set of realized types; once that set stops changing, its disjunction
is a quantifier-free equivalent from that index on. :func:`stabilize_formula`
applies this bottom-up to arbitrary formulas.
"""

import logging
from itertools import product
from typing import List, Optional, Sequence, Set, Tuple

from embq.core.models import AtomicType, Structure, TypeDisjunction
from embq.core.types import atomic_type, qf_to_type_disjunction
from embq.logic.evaluator import compile_formula
from embq.logic.interpretation import substitute_interpretation
from embq.logic.models import And, Exists, Forall, Formula, Interpretation, Not, Or, QApp
from embq.logic.quantifiers import EXISTS
from embq.logic.syntax import conjunction, disjunction, format_formula, free_variables, is_quantifier_free, negation
from embq.qelim.homogeneity import is_quasi_homogeneous
from embq.qelim.models import (
    Chain,
    EliminationResult,
    StabilizationResult,
    StabilizationStep,
    TypeChainReport,
)
from embq.shared.exceptions import (
    ChainTooShortException,
    NotQuasiHomogeneousException,
    ValidationException,
    VerificationFailure,
)

logger = logging.getLogger(__name__)


def _require_homogeneous(structure: Structure) -> None:
    report = is_quasi_homogeneous(structure)
    if not report:
        raise NotQuasiHomogeneousException(*report.counterexample)


def _variables(formula: Formula, variables: Optional[Sequence[str]]) -> Tuple[str, ...]:
    free = free_variables(formula)
    if variables is None:
        return tuple(sorted(free))
    variables = tuple(variables)
    missing = free - set(variables)
    if missing:
        raise ValidationException(f"Free variables {sorted(missing)} missing from {list(variables)}")
    return variables


def _split_types(structure: Structure, formula: Formula,
                 variables: Tuple[str, ...]) -> Tuple[Set[AtomicType], Set[AtomicType]]:
    check = compile_formula(formula)
    positive, negative = set(), set()
    for tup in product(structure.universe, repeat=len(variables)):
        env = dict(zip(variables, tup))
        (positive if check(structure, env) else negative).add(atomic_type(structure, tup))
    return positive, negative


def _realized_types(structure: Structure, formula: Formula, variables: Tuple[str, ...]) -> Set[AtomicType]:
    positive, negative = _split_types(structure, formula, variables)
    mixed = positive & negative
    if mixed:
        raise VerificationFailure(
            f"Atomic type {min(mixed, key=lambda t: t.sort_key)} is realized both inside and outside "
            f"{format_formula(formula)}",
            details={"formula": format_formula(formula)}
        )
    return positive


def eliminate_quantifiers(structure: Structure, formula: Formula,
                          variables: Optional[Sequence[str]] = None) -> EliminationResult:
    """
    Compute a quantifier-free equivalent on a quasi-homogeneous structure.

    Args:
        structure: Quasi-homogeneous structure
        formula: Any formula
        variables: Free-variable order of the result, default sorted free variables

    Returns:
        The realized types satisfying the formula and their disjunction, checked
        to agree with the formula on every tuple

    Raises:
        NotQuasiHomogeneousException: If the structure fails the homogeneity check
        VerificationFailure: If a type is realized both inside and outside the formula
    """
    _require_homogeneous(structure)
    variables = _variables(formula, variables)
    types = _realized_types(structure, formula, variables)
    theta = TypeDisjunction(variables, frozenset(types))
    logger.info(f"Eliminated quantifiers: {len(types)} types over {list(variables)}")
    return EliminationResult(theta, theta.to_formula(structure.vocab))


def type_chain(chain: Chain, formula: Formula, variables: Optional[Sequence[str]] = None) -> TypeChainReport:
    """
    Track the realized types of a quantifier application along a chain.

    Args:
        chain: Chain of quasi-homogeneous structures
        formula: Embedding-closed quantifier applied to quantifier-free bodies

    Returns:
        TypeChainReport with per-index type sets and the least index after
        which they stay constant

    Raises:
        ValidationException: If the formula has the wrong shape
        NotQuasiHomogeneousException: If a member fails the homogeneity check
        VerificationFailure: If the type sets are not monotone
    """
    if not isinstance(formula, QApp) or not all(is_quantifier_free(b) for _, b in formula.bindings):
        raise ValidationException("Expected a quantifier applied to quantifier-free bodies")
    if not formula.quantifier.embedding_closed:
        raise ValidationException(
            f"{formula.quantifier.name} is not embedding-closed; negate its inner quantifier instead"
        )
    for structure in chain.structures:
        _require_homogeneous(structure)
    variables = _variables(formula, variables)

    type_sets = [frozenset(_realized_types(s, formula, variables)) for s in chain.structures]
    monotone = all(a <= b for a, b in zip(type_sets, type_sets[1:]))
    if not monotone:
        raise VerificationFailure(
            f"Type sets of {format_formula(formula)} shrink along the chain",
            details={"sizes": [len(t) for t in type_sets]}
        )
    index = 0
    for i in range(1, len(type_sets)):
        if type_sets[i] != type_sets[i - 1]:
            index = i
    witnessed = index < len(type_sets) - 1
    logger.info(f"Type chain of {format_formula(formula)} stabilizes at {index} (witnessed={witnessed})")
    return TypeChainReport(
        variables=variables,
        type_sets=tuple(type_sets),
        stabilization_index=index,
        witnessed=witnessed,
        monotone=monotone,
        theta=TypeDisjunction(variables, type_sets[-1]),
    )


def _stabilize(chain: Chain, formula: Formula, steps: List[StabilizationStep]) -> Tuple[int, Formula]:
    if is_quantifier_free(formula):
        return 0, formula
    if isinstance(formula, Not):
        index, theta = _stabilize(chain, formula.body, steps)
        return index, negation(theta)
    if isinstance(formula, (And, Or)):
        parts = [_stabilize(chain, p, steps) for p in formula.parts]
        combine = conjunction if isinstance(formula, And) else disjunction
        return max(i for i, _ in parts), combine(t for _, t in parts)
    if isinstance(formula, Exists):
        return _stabilize(chain, QApp(EXISTS, (((formula.variable,), formula.body),)), steps)
    if isinstance(formula, Forall):
        return _stabilize(chain, Not(Exists(formula.variable, Not(formula.body))), steps)

    bodies = [_stabilize(chain, body, steps) for _, body in formula.bindings]
    start = max((i for i, _ in bodies), default=0)
    quantifier, negate = formula.quantifier, False
    while not quantifier.embedding_closed:
        quantifier, negate = quantifier.semantics.inner, not negate
    node = QApp(quantifier, tuple(
        (variables, theta) for (variables, _), (_, theta) in zip(formula.bindings, bodies)
    ))
    text = format_formula(formula)
    if start >= len(chain) - 1:
        raise ChainTooShortException(text, start)
    report = type_chain(chain.tail(start), node)
    index = start + report.stabilization_index
    steps.append(StabilizationStep(text, start, index))
    if not report.witnessed:
        raise ChainTooShortException(text, index)
    theta = report.theta.to_formula(chain.vocab)
    return index, negation(theta) if negate else theta


def stabilize_formula(chain: Chain, formula: Formula,
                      variables: Optional[Sequence[str]] = None) -> StabilizationResult:
    """
    Find an index after which a formula has one quantifier-free equivalent along the chain.

    Quantifier applications are stabilized innermost first; each is replaced
    by the type disjunction its type chain settles on, and the index is the
    largest index any of them needed. The result is checked on every tuple of
    every member from that index on.

    Raises:
        NotQuasiHomogeneousException: If a member fails the homogeneity check
        ChainTooShortException: If some subformula has not settled before the last member
        VerificationFailure: If the equivalent disagrees with the formula on some member
    """
    for structure in chain.structures:
        _require_homogeneous(structure)
    variables = _variables(formula, variables)
    steps: List[StabilizationStep] = []
    index, theta = _stabilize(chain, formula, steps)

    original, reduced = compile_formula(formula), compile_formula(theta)
    for i in range(index, len(chain)):
        structure = chain[i]
        for tup in product(structure.universe, repeat=len(variables)):
            env = dict(zip(variables, tup))
            if original(structure, env) != reduced(structure, env):
                raise VerificationFailure(
                    f"Stabilized form of {format_formula(formula)} fails at chain index {i}",
                    details={"index": i, "tuple": list(tup)}
                )
    types = qf_to_type_disjunction(theta, chain.vocab, variables=variables)
    logger.info(f"Stabilized {format_formula(formula)} at index {index}")
    return StabilizationResult(index, variables, theta, types, tuple(steps))


def stabilize_interpreted(chain: Chain, interp: Interpretation, formula: Formula,
                          variables: Optional[Sequence[str]] = None) -> StabilizationResult:
    """Stabilize a formula about the interpreted structures through its pullback."""
    return stabilize_formula(chain, substitute_interpretation(formula, interp), variables)
