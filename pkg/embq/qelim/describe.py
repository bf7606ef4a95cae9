"""
Characteristic Sentences
========================

A finite structure is pinned down up to isomorphism by the sentence saying
that there are distinct elements with its full atomic diagram and nothing
else. Dropping the closing clause gives a sentence true exactly in the
structures it embeds into.
"""

import logging
from itertools import product
from typing import Sequence

from embq.core.models import Structure
from embq.core.types import default_variables
from embq.logic.models import Atom, Eq, Exists, Forall, Formula, Not
from embq.logic.syntax import conjunction, disjunction
from embq.shared.exceptions import ValidationException, VocabularyMismatchException

logger = logging.getLogger(__name__)


def _diagram(structure: Structure) -> Formula:
    """Distinctness plus every atomic fact and non-fact, elements named x1..xn."""
    names = dict(zip(structure.universe, default_variables(structure.size)))
    literals = [
        Not(Eq(names[a], names[b]))
        for i, a in enumerate(structure.universe)
        for b in structure.universe[i + 1:]
    ]
    for symbol, arity in structure.vocab:
        for tup in product(structure.universe, repeat=arity):
            atom = Atom(symbol, tuple(names[a] for a in tup))
            literals.append(atom if structure.holds(symbol, tup) else Not(atom))
    return conjunction(literals)


def _exists_all(variables: Sequence[str], body: Formula) -> Formula:
    for variable in reversed(variables):
        body = Exists(variable, body)
    return body


def describe_structure(structure: Structure) -> Formula:
    """
    Build the sentence true exactly in the structures isomorphic to ``structure``.

    Args:
        structure: Finite structure

    Returns:
        exists x1..xn (diagram & forall y (y = x1 | ... | y = xn))
    """
    variables = default_variables(structure.size)
    closing = Forall("y", disjunction(Eq("y", x) for x in variables))
    sentence = _exists_all(variables, conjunction([_diagram(structure), closing]))
    logger.info(f"Described a {structure.size}-element structure")
    return sentence


def embeddability_sentence(structures: Sequence[Structure]) -> Formula:
    """
    Build the sentence true in B iff some listed structure embeds into B.

    Raises:
        ValidationException: If the list is empty
        VocabularyMismatchException: If the structures differ in vocabulary
    """
    structures = list(structures)
    if not structures:
        raise ValidationException("At least one structure is required")
    vocab = structures[0].vocab
    if any(s.vocab != vocab for s in structures):
        raise VocabularyMismatchException("Structures must share one vocabulary")
    return disjunction(
        _exists_all(default_variables(s.size), _diagram(s)) for s in structures
    )
