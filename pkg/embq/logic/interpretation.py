"""
Interpretations and Quantifier Rewriting
========================================

Applying an interpretation to a structure, pulling formulas back along an
interpretation, eliminating a quantifier whose class has a defining
sentence, and the homomorphism form of an embedding-closed quantifier.
"""

import logging
from typing import Iterable, Optional, Sequence, Tuple

from embq.core.canonical import enumerate_structures
from embq.core.models import Structure, Vocabulary
from embq.logic.evaluator import evaluate, satisfying_tuples
from embq.logic.models import (
    And,
    Atom,
    Eq,
    Exists,
    Forall,
    Formula,
    HomomorphismClosure,
    Interpretation,
    Not,
    Or,
    QApp,
    QuantifierDef,
)
from embq.logic.quantifiers import quantifier_member
from embq.logic.syntax import all_variables, alpha_rename, free_variables, map_atoms, relation_symbols, substitute_variables
from embq.morphism.reduction import f_transform
from embq.shared.exceptions import NotFoundException, ValidationException, VocabularyMismatchException

logger = logging.getLogger(__name__)


def interpretation(sigma: Vocabulary, defs) -> Interpretation:
    """Build an interpretation from ``{R: (variables, body)}``."""
    return Interpretation(sigma, tuple(
        (name, tuple(variables), body) for name, (variables, body) in dict(defs).items()
    ))


def apply_interpretation(interp: Interpretation, structure: Structure) -> Structure:
    """
    Evaluate each definition over all tuples of the structure.

    Returns:
        The σ-structure on the same universe
    """
    relations = []
    for name, _ in interp.sigma:
        variables, body = interp.definition(name)
        relations.append(satisfying_tuples(structure, body, variables))
    return Structure(interp.sigma, structure.universe, tuple(relations))


def substitute_interpretation(formula: Formula, interp: Interpretation) -> Formula:
    """
    Replace every σ-atom ``R(t)`` by the definition of R instantiated at ``t``.

    Bound variables of a definition are renamed when they would capture a
    term. Quantifier nodes of the formula are kept; their bodies are
    rewritten.

    Raises:
        NotFoundException: If the formula uses a symbol the interpretation does not define
    """
    for name in relation_symbols(formula):
        if name not in interp.sigma:
            raise NotFoundException("Definition of relation symbol", name)

    def replace(atom: Atom) -> Formula:
        variables, body = interp.definition(atom.relation)
        return substitute_variables(body, dict(zip(variables, atom.terms)))

    return map_atoms(formula, replace)


def check_defining_sentence(quantifier: QuantifierDef, sentence: Formula,
                            structures: Iterable[Structure]) -> None:
    """
    Spot-check that ``sentence`` defines the quantifier's class.

    Raises:
        ValidationException: Naming the first structure where the two disagree
    """
    checked = 0
    for structure in structures:
        if evaluate(structure, sentence, {}) != quantifier_member(quantifier, structure):
            raise ValidationException(
                f"Sentence does not define {quantifier.name}: disagreement on {structure}",
                details={"structure": str(structure)}
            )
        checked += 1
    logger.info(f"Defining sentence for {quantifier.name} agrees on {checked} structures")


def _rewrite(formula: Formula, quantifier: QuantifierDef, sentence: Formula) -> Formula:
    if isinstance(formula, Not):
        return Not(_rewrite(formula.body, quantifier, sentence))
    if isinstance(formula, (And, Or)):
        return type(formula)(tuple(_rewrite(p, quantifier, sentence) for p in formula.parts))
    if isinstance(formula, (Exists, Forall)):
        return type(formula)(formula.variable, _rewrite(formula.body, quantifier, sentence))
    if isinstance(formula, QApp):
        bindings = tuple(
            (variables, _rewrite(body, quantifier, sentence)) for variables, body in formula.bindings
        )
        if formula.quantifier != quantifier:
            return QApp(formula.quantifier, bindings)
        used = set()
        for variables, body in bindings:
            used |= all_variables(body) | set(variables)
        fresh = alpha_rename(sentence, used)
        definitions = dict(zip(quantifier.sigma.symbols, bindings))

        def replace(atom: Atom) -> Formula:
            variables, body = definitions[atom.relation]
            return substitute_variables(body, dict(zip(variables, atom.terms)))

        return map_atoms(fresh, replace)
    return formula


def rewrite_defined_quantifier(formula: Formula, quantifier: QuantifierDef, sentence: Formula,
                               check_size: Optional[int] = 2) -> Formula:
    """
    Eliminate every application of ``quantifier`` using a defining sentence.

    Applications are rewritten innermost first: the sentence's bound
    variables are renamed apart from the bindings, then its σ-atoms are
    replaced by the bound bodies.

    Args:
        formula: Formula containing applications of ``quantifier``
        quantifier: The quantifier to eliminate
        sentence: A sentence over ``quantifier.sigma`` defining its class
        check_size: Spot-check the sentence on all σ-structures up to this size
            (None skips the check)

    Raises:
        VocabularyMismatchException: If the sentence uses symbols outside ``quantifier.sigma``
        ValidationException: If the sentence has free variables or fails the spot-check
    """
    stray = relation_symbols(sentence) - set(quantifier.sigma.symbols)
    if stray:
        raise VocabularyMismatchException(
            f"Defining sentence uses {sorted(stray)} outside {quantifier.sigma}"
        )
    if free_variables(sentence):
        raise ValidationException("Defining sentence must not have free variables")
    if check_size is not None:
        check_defining_sentence(quantifier, sentence, enumerate_structures(quantifier.sigma, check_size))
    return _rewrite(formula, quantifier, sentence)


def homomorphism_reduction(generators: Sequence[Structure], vocab: Vocabulary,
                           name: str = "Qhom") -> Tuple[QuantifierDef, Formula]:
    """
    Express "some generator embeds" with a homomorphism-closed quantifier.

    The quantifier is the homomorphism closure of the transformed generators;
    the formula applies it to each relation, its negation and inequality, so
    a structure satisfies the formula exactly when its transform lies in the
    closure.

    Returns:
        The quantifier over the transformed vocabulary and the sentence over ``vocab``
    """
    generators = tuple(generators)
    if not generators:
        raise ValidationException("At least one generator is required")
    for generator in generators:
        if generator.vocab != vocab:
            raise VocabularyMismatchException(f"Generator over {generator.vocab}, expected {vocab}")
    transformed = tuple(f_transform(g) for g in generators)
    sigma = transformed[0].vocab
    quantifier = QuantifierDef(name, sigma, HomomorphismClosure(transformed))

    bindings = []
    for symbol, arity in vocab:
        variables = tuple(f"u{i + 1}" for i in range(arity))
        bindings.append((variables, Atom(symbol, variables)))
    for symbol, arity in vocab:
        variables = tuple(f"u{i + 1}" for i in range(arity))
        bindings.append((variables, Not(Atom(symbol, variables))))
    bindings.append((("u1", "u2"), Not(Eq("u1", "u2"))))
    return quantifier, QApp(quantifier, tuple(bindings))
