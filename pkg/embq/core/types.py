"""
Atomic Types
============

Computing, enumerating and rendering atomic types, and turning quantifier-free
formulas into type disjunctions.
"""

import logging
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from embq.core.models import AtomicType, Structure, TypeDisjunction, Vocabulary
from embq.shared.config import settings
from embq.shared.exceptions import ResourceCapExceeded, ValidationException

logger = logging.getLogger(__name__)


def default_variables(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def restricted_growth_strings(n: int) -> Iterator[Tuple[int, ...]]:
    """All set partitions of n positions as restricted growth strings, lexicographically."""
    if n == 0:
        yield ()
        return

    def extend(prefix: List[int], top: int):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for block in range(top + 2):
            prefix.append(block)
            yield from extend(prefix, max(top, block))
            prefix.pop()

    yield from extend([0], 0)


def block_atoms(vocab: Vocabulary, blocks: int) -> List[Tuple[str, Tuple[int, ...]]]:
    """Every relation atom over ``blocks`` block ids, in vocabulary then lexicographic order."""
    return [
        (name, args)
        for name, arity in vocab
        for args in product(range(blocks), repeat=arity)
    ]


def count_atomic_types(vocab: Vocabulary, n: int) -> int:
    total = 0
    for rgs in restricted_growth_strings(n):
        blocks = max(rgs) + 1 if rgs else 0
        total += 2 ** sum(blocks ** arity for _, arity in vocab)
    return total


def atomic_type(structure: Structure, assignment: Sequence[str]) -> AtomicType:
    """
    Compute the atomic type realized by a tuple.

    Args:
        structure: The structure the tuple lives in
        assignment: Element ids, repetitions allowed

    Returns:
        AtomicType whose facts are the relation atoms true of the tuple

    Raises:
        NotFoundException: If an entry is not in the universe
    """
    structure.require_elements(assignment)
    block_of = {}
    representatives: List[str] = []
    rgs = []
    for element in assignment:
        if element not in block_of:
            block_of[element] = len(representatives)
            representatives.append(element)
        rgs.append(block_of[element])

    facts = set()
    blocks = len(representatives)
    for name, arity in structure.vocab:
        tuples = structure.relation(name)
        if len(tuples) < blocks ** arity:
            for tup in tuples:
                if all(e in block_of for e in tup):
                    facts.add((name, tuple(block_of[e] for e in tup)))
        else:
            for args in product(range(blocks), repeat=arity):
                if tuple(representatives[b] for b in args) in tuples:
                    facts.add((name, args))
    return AtomicType(tuple(rgs), frozenset(facts))


def enumerate_atomic_types(vocab: Vocabulary, n: int, cap: Optional[int] = None) -> List[AtomicType]:
    """
    Enumerate every consistent atomic n-type exactly once.

    Equality patterns come in restricted growth string order; within a
    pattern, fact sets follow the lexicographic order of their characteristic
    vectors over :func:`block_atoms`.

    Raises:
        ValidationException: If n is negative
        ResourceCapExceeded: If the count would exceed the enumeration cap
    """
    if n < 0:
        raise ValidationException("Type arity must be non-negative", details={"n": n})
    cap = settings.CAP_ENUMERATION if cap is None else cap
    total = count_atomic_types(vocab, n)
    if total > cap:
        logger.warning(f"Refusing to enumerate {total} atomic {n}-types over {vocab}")
        raise ResourceCapExceeded("enumeration", cap, total)

    types = []
    for rgs in restricted_growth_strings(n):
        blocks = max(rgs) + 1 if rgs else 0
        atoms = block_atoms(vocab, blocks)
        for bits in product((False, True), repeat=len(atoms)):
            facts = frozenset(atom for atom, bit in zip(atoms, bits) if bit)
            types.append(AtomicType(rgs, facts))
    logger.debug(f"Enumerated {len(types)} atomic {n}-types over {vocab}")
    return types


def type_formula(t: AtomicType, vocab: Vocabulary, variables: Sequence[str]):
    """Render a type as the conjunction of its literals over ``variables``."""
    from embq.logic.models import And, Atom, Eq, Not, Top

    if len(variables) != t.arity:
        raise ValidationException(
            f"Type of arity {t.arity} rendered over {len(variables)} variables"
        )
    literals = []
    first = {}
    for variable, block in zip(variables, t.rgs):
        if block in first:
            literals.append(Eq(first[block], variable))
        else:
            first[block] = variable
    heads = [first[b] for b in range(t.blocks)]
    for i in range(len(heads)):
        for j in range(i + 1, len(heads)):
            literals.append(Not(Eq(heads[i], heads[j])))
    for name, args in block_atoms(vocab, t.blocks):
        atom = Atom(name, tuple(heads[b] for b in args))
        literals.append(atom if (name, args) in t.facts else Not(atom))
    if not literals:
        return Top()
    if len(literals) == 1:
        return literals[0]
    return And(tuple(literals))


def qf_to_type_disjunction(formula, vocab: Vocabulary, n: Optional[int] = None,
                           variables: Optional[Sequence[str]] = None) -> TypeDisjunction:
    """
    Collect the atomic types whose canonical model satisfies a quantifier-free formula.

    Args:
        formula: Quantifier-free formula
        vocab: Vocabulary of the types
        n: Number of variables (defaults to ``len(variables)``)
        variables: Variable names bound to tuple positions, default x1..xn

    Returns:
        TypeDisjunction logically equivalent to ``formula``

    Raises:
        ValidationException: If the formula has quantifiers or stray free variables
    """
    from embq.logic.evaluator import evaluate
    from embq.logic.syntax import free_variables, is_quantifier_free

    if variables is None:
        variables = default_variables(n or 0)
    variables = tuple(variables)
    if n is not None and n != len(variables):
        raise ValidationException(f"Expected {n} variables, got {len(variables)}")
    if not is_quantifier_free(formula):
        raise ValidationException("Formula is not quantifier-free")
    stray = free_variables(formula) - set(variables)
    if stray:
        raise ValidationException(
            f"Free variables {sorted(stray)} not among {list(variables)}",
            details={"variables": sorted(stray)}
        )

    selected = set()
    for t in enumerate_atomic_types(vocab, len(variables)):
        model, assignment = t.canonical_model(vocab)
        if evaluate(model, formula, dict(zip(variables, assignment))):
            selected.add(t)
    return TypeDisjunction(variables, frozenset(selected))


def realized_types(structure: Structure, n: int) -> Iterator[Tuple[Tuple[str, ...], AtomicType]]:
    """Every n-tuple of ``structure`` with its atomic type."""
    for tup in product(structure.universe, repeat=n):
        yield tup, atomic_type(structure, tup)
