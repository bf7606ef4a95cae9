"""
Almost-Sure Quantifier-Free Equivalents
=======================================

For an embedding-closed quantifier applied to quantifier-free bodies, the
disjunction of the atomic types realized together with the formula in some
finite structure is equivalent to it with asymptotic probability 1. The
search below covers structures up to a size bound; agreement on random
structures is then measured statistically.
"""

import logging
from itertools import product
from typing import Optional, Sequence, Tuple

from embq.core.canonical import enumerate_structures
from embq.core.models import TypeDisjunction, Vocabulary
from embq.core.types import atomic_type
from embq.logic.evaluator import compile_formula
from embq.logic.models import And, Forall, Formula, Not, Or, QApp, QuantifierDef
from embq.logic.syntax import free_variables, is_quantifier_free
from embq.shared.exceptions import ValidationException
from embq.zeroone.estimate import estimate_mu
from embq.zeroone.models import MuEstimate, SampleConfig

logger = logging.getLogger(__name__)


def asympt_theta(quantifier: QuantifierDef, bindings: Sequence[Tuple[Sequence[str], Formula]],
                 vocab: Vocabulary, search_size: int = 4,
                 variables: Optional[Sequence[str]] = None, cap: Optional[int] = None) -> TypeDisjunction:
    """
    Collect the atomic types realized together with ``quantifier(bindings)``.

    Args:
        quantifier: Embedding-closed quantifier
        bindings: Bound variables and quantifier-free body per quantifier symbol
        vocab: Vocabulary of the bodies
        search_size: Largest structure size searched
        variables: Free-variable order, default sorted free variables
        cap: Enumeration cap, default ``EMBQ_CAP_ENUMERATION``

    Returns:
        The type disjunction; it follows from the formula on every structure
        up to ``search_size``

    Raises:
        ValidationException: If the quantifier is not embedding-closed or a body has quantifiers
        ResourceCapExceeded: If the structure enumeration exceeds the cap
    """
    if not quantifier.embedding_closed:
        raise ValidationException(f"{quantifier.name} is not embedding-closed")
    formula = QApp(quantifier, tuple((tuple(v), body) for v, body in bindings))
    if not all(is_quantifier_free(body) for _, body in formula.bindings):
        raise ValidationException("Quantifier bodies must be quantifier-free")
    free = free_variables(formula)
    variables = tuple(sorted(free)) if variables is None else tuple(variables)
    if free - set(variables):
        raise ValidationException(f"Free variables {sorted(free - set(variables))} missing from {list(variables)}")

    check = compile_formula(formula)
    types = set()
    searched = 0
    for structure in enumerate_structures(vocab, search_size, cap=cap):
        searched += 1
        for tup in product(structure.universe, repeat=len(variables)):
            if check(structure, dict(zip(variables, tup))):
                types.add(atomic_type(structure, tup))
    logger.info(f"Searched {searched} structures up to size {search_size}: {len(types)} types")
    return TypeDisjunction(variables, frozenset(types))


def agreement_sentence(formula: Formula, theta: TypeDisjunction, vocab: Vocabulary) -> Formula:
    """forall x (theta <-> formula) over the disjunction's variables."""
    reduced = theta.to_formula(vocab)
    sentence = Or((And((reduced, formula)), And((Not(reduced), Not(formula)))))
    for variable in reversed(theta.variables):
        sentence = Forall(variable, sentence)
    return sentence


def agreement_rate(formula: Formula, theta: TypeDisjunction, config: SampleConfig,
                   jobs: Optional[int] = None) -> MuEstimate:
    """Fraction of random structures on which ``theta`` and ``formula`` agree everywhere."""
    return estimate_mu(agreement_sentence(formula, theta, config.vocab), config, jobs)
