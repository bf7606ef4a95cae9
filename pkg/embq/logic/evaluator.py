"""
Model Checking
==============

Formulas are compiled once into nested closures ``check(structure, env)``
where ``env`` maps variable names to elements. Quantified variables are
bound by mutating ``env`` and restoring it afterwards.

A generalized quantifier node builds its σ-structure by evaluating every
body over all tuples of the universe, then asks the quantifier for
membership. Results are cached per structure and per values of the node's
free variables; the cache is dropped whenever a different structure is
evaluated.
"""

import logging
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Mapping

from embq.core.models import Structure
from embq.logic.models import And, Atom, Bottom, Eq, Exists, Forall, Formula, Not, Or, QApp, Top
from embq.logic.quantifiers import quantifier_member
from embq.logic.syntax import free_variables
from embq.shared.exceptions import ValidationException

logger = logging.getLogger(__name__)

Check = Callable[[Structure, Dict[str, str]], bool]
_UNSET = object()


def _bind(variable: str, body: Check, want: bool) -> Check:
    def check(structure: Structure, env: Dict[str, str]) -> bool:
        saved = env.get(variable, _UNSET)
        try:
            for element in structure.universe:
                env[variable] = element
                if body(structure, env) == want:
                    return want
            return not want
        finally:
            if saved is _UNSET:
                env.pop(variable, None)
            else:
                env[variable] = saved
    return check


def _section(structure: Structure, env: Dict[str, str], variables, body: Check):
    saved = {v: env.get(v, _UNSET) for v in variables}
    tuples = []
    try:
        for tup in product(structure.universe, repeat=len(variables)):
            env.update(zip(variables, tup))
            if body(structure, env):
                tuples.append(tup)
    finally:
        for v, value in saved.items():
            if value is _UNSET:
                env.pop(v, None)
            else:
                env[v] = value
    return frozenset(tuples)


def _quantified(node: QApp) -> Check:
    bodies = [(variables, compile_formula(body)) for variables, body in node.bindings]
    outer = tuple(sorted(free_variables(node)))
    quantifier = node.quantifier
    cache = {"structure": None, "table": {}}

    def check(structure: Structure, env: Dict[str, str]) -> bool:
        if cache["structure"] is not structure:
            cache["structure"] = structure
            cache["table"] = {}
        key = tuple(env[v] for v in outer)
        table = cache["table"]
        if key not in table:
            relations = tuple(_section(structure, env, variables, body) for variables, body in bodies)
            sigma_structure = Structure(quantifier.sigma, structure.universe, relations)
            table[key] = quantifier_member(quantifier, sigma_structure)
        return table[key]

    return check


@lru_cache(maxsize=512)
def compile_formula(formula: Formula) -> Check:
    """Compile a formula into a closure ``check(structure, env) -> bool``."""
    if isinstance(formula, Top):
        return lambda structure, env: True
    if isinstance(formula, Bottom):
        return lambda structure, env: False
    if isinstance(formula, Atom):
        name, terms = formula.relation, formula.terms
        return lambda structure, env: tuple(env[t] for t in terms) in structure.relation(name)
    if isinstance(formula, Eq):
        left, right = formula.left, formula.right
        return lambda structure, env: env[left] == env[right]
    if isinstance(formula, Not):
        body = compile_formula(formula.body)
        return lambda structure, env: not body(structure, env)
    if isinstance(formula, And):
        parts = [compile_formula(p) for p in formula.parts]
        return lambda structure, env: all(p(structure, env) for p in parts)
    if isinstance(formula, Or):
        parts = [compile_formula(p) for p in formula.parts]
        return lambda structure, env: any(p(structure, env) for p in parts)
    if isinstance(formula, Exists):
        return _bind(formula.variable, compile_formula(formula.body), True)
    if isinstance(formula, Forall):
        return _bind(formula.variable, compile_formula(formula.body), False)
    if isinstance(formula, QApp):
        return _quantified(formula)
    raise TypeError(f"Not a formula: {formula!r}")


def evaluate(structure: Structure, formula: Formula, assignment: Mapping[str, str] = None) -> bool:
    """
    Decide ``structure, assignment |= formula``.

    Args:
        structure: The structure
        formula: Any formula
        assignment: Values for (at least) the free variables

    Returns:
        The truth value

    Raises:
        ValidationException: If a free variable is unassigned
        NotFoundException: If an assigned element is not in the universe
    """
    env = dict(assignment or {})
    missing = free_variables(formula) - set(env)
    if missing:
        raise ValidationException(
            f"Unassigned free variables: {sorted(missing)}",
            details={"variables": sorted(missing)}
        )
    structure.require_elements(env.values())
    return compile_formula(formula)(structure, env)


def sentence_holds(structure: Structure, formula: Formula) -> bool:
    return evaluate(structure, formula, {})


def satisfying_tuples(structure: Structure, formula: Formula, variables) -> frozenset:
    """All tuples over ``variables`` satisfying ``formula``."""
    variables = tuple(variables)
    missing = free_variables(formula) - set(variables)
    if missing:
        raise ValidationException(f"Unassigned free variables: {sorted(missing)}")
    return _section(structure, {}, variables, compile_formula(formula))
