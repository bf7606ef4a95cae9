"""
Syntactic Operations
====================

Free variables, quantifier rank, printing and capture-avoiding variable
substitution over the formula AST.
"""

from functools import lru_cache
from itertools import count
from typing import Callable, FrozenSet, Iterable, Mapping, Set

from embq.logic.models import And, Atom, Bottom, Eq, Exists, Forall, Formula, Not, Or, QApp, Top

BINDERS = (Exists, Forall)


def conjunction(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return Top()
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disjunction(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return Bottom()
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def negation(formula: Formula) -> Formula:
    if isinstance(formula, Not):
        return formula.body
    return Not(formula)


@lru_cache(maxsize=4096)
def free_variables(formula: Formula) -> FrozenSet[str]:
    """Free variables; a QApp binds its tuples in the corresponding bodies only."""
    if isinstance(formula, (Top, Bottom)):
        return frozenset()
    if isinstance(formula, Atom):
        return frozenset(formula.terms)
    if isinstance(formula, Eq):
        return frozenset((formula.left, formula.right))
    if isinstance(formula, Not):
        return free_variables(formula.body)
    if isinstance(formula, (And, Or)):
        return frozenset().union(*(free_variables(p) for p in formula.parts))
    if isinstance(formula, BINDERS):
        return free_variables(formula.body) - {formula.variable}
    if isinstance(formula, QApp):
        return frozenset().union(*(
            free_variables(body) - set(variables) for variables, body in formula.bindings
        ))
    raise TypeError(f"Not a formula: {formula!r}")


def all_variables(formula: Formula) -> FrozenSet[str]:
    """Every variable occurring free or bound."""
    if isinstance(formula, (Top, Bottom)):
        return frozenset()
    if isinstance(formula, Atom):
        return frozenset(formula.terms)
    if isinstance(formula, Eq):
        return frozenset((formula.left, formula.right))
    if isinstance(formula, Not):
        return all_variables(formula.body)
    if isinstance(formula, (And, Or)):
        return frozenset().union(*(all_variables(p) for p in formula.parts))
    if isinstance(formula, BINDERS):
        return all_variables(formula.body) | {formula.variable}
    return frozenset().union(*(
        all_variables(body) | set(variables) for variables, body in formula.bindings
    ))


def variable_count(formula: Formula) -> int:
    return len(all_variables(formula))


def is_quantifier_free(formula: Formula) -> bool:
    if isinstance(formula, (BINDERS, QApp)):
        return False
    if isinstance(formula, Not):
        return is_quantifier_free(formula.body)
    if isinstance(formula, (And, Or)):
        return all(is_quantifier_free(p) for p in formula.parts)
    return True


def quantifier_rank(formula: Formula) -> int:
    """Nesting depth of quantifiers, generalized quantifiers included."""
    if isinstance(formula, Not):
        return quantifier_rank(formula.body)
    if isinstance(formula, (And, Or)):
        return max((quantifier_rank(p) for p in formula.parts), default=0)
    if isinstance(formula, BINDERS):
        return 1 + quantifier_rank(formula.body)
    if isinstance(formula, QApp):
        return 1 + max(quantifier_rank(body) for _, body in formula.bindings)
    return 0


def relation_symbols(formula: Formula) -> FrozenSet[str]:
    if isinstance(formula, Atom):
        return frozenset((formula.relation,))
    if isinstance(formula, Not):
        return relation_symbols(formula.body)
    if isinstance(formula, (And, Or)):
        return frozenset().union(*(relation_symbols(p) for p in formula.parts))
    if isinstance(formula, BINDERS):
        return relation_symbols(formula.body)
    if isinstance(formula, QApp):
        return frozenset().union(*(relation_symbols(body) for _, body in formula.bindings))
    return frozenset()


def quantifiers_used(formula: Formula) -> Set[str]:
    if isinstance(formula, Not):
        return quantifiers_used(formula.body)
    if isinstance(formula, (And, Or)):
        return set().union(*(quantifiers_used(p) for p in formula.parts))
    if isinstance(formula, BINDERS):
        return quantifiers_used(formula.body)
    if isinstance(formula, QApp):
        return {formula.quantifier.name}.union(*(quantifiers_used(body) for _, body in formula.bindings))
    return set()


def format_formula(formula: Formula) -> str:
    """
    Canonical printer.

    Parser-built formulas print to text that parses back to the same formula.
    Conjunctions and disjunctions with fewer than two parts print as ``true``,
    ``false`` or their single part, which parse back to an equivalent formula.
    """
    if isinstance(formula, Top):
        return "true"
    if isinstance(formula, Bottom):
        return "false"
    if isinstance(formula, Atom):
        return f"{formula.relation}({','.join(formula.terms)})"
    if isinstance(formula, Eq):
        return f"{formula.left} = {formula.right}"
    if isinstance(formula, Not):
        if isinstance(formula.body, Eq):
            return f"{formula.body.left} != {formula.body.right}"
        return f"!{_operand(formula.body)}"
    if isinstance(formula, (And, Or)) and len(formula.parts) < 2:
        if formula.parts:
            return format_formula(formula.parts[0])
        return "true" if isinstance(formula, And) else "false"
    if isinstance(formula, And):
        return "(" + " & ".join(_operand(p) for p in formula.parts) + ")"
    if isinstance(formula, Or):
        return "(" + " | ".join(_operand(p) for p in formula.parts) + ")"
    if isinstance(formula, Exists):
        return f"(exists {formula.variable}. {format_formula(formula.body)})"
    if isinstance(formula, Forall):
        return f"(forall {formula.variable}. {format_formula(formula.body)})"
    if isinstance(formula, QApp):
        bindings = "; ".join(
            f"{','.join(variables)}: {format_formula(body)}" for variables, body in formula.bindings
        )
        return f"{formula.quantifier.name}[{bindings}]"
    raise TypeError(f"Not a formula: {formula!r}")


def _operand(formula: Formula) -> str:
    text = format_formula(formula)
    if isinstance(formula, Eq) or (isinstance(formula, Not) and isinstance(formula.body, Eq)):
        return f"({text})"
    return text


def fresh_variable(avoid: Set[str], base: str = "v") -> str:
    base = base.rstrip("0123456789_") or "v"
    for i in count(1):
        candidate = f"{base}_{i}"
        if candidate not in avoid:
            return candidate


def substitute_variables(formula: Formula, mapping: Mapping[str, str]) -> Formula:
    """
    Simultaneously replace free variables, renaming binders that would capture.

    Args:
        formula: Formula to rewrite
        mapping: Variable to variable

    Returns:
        The substituted formula
    """
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return formula
    return _substitute(formula, mapping)


def _substitute(formula: Formula, mapping: Mapping[str, str]) -> Formula:
    if not mapping:
        return formula
    if isinstance(formula, (Top, Bottom)):
        return formula
    if isinstance(formula, Atom):
        return Atom(formula.relation, tuple(mapping.get(t, t) for t in formula.terms))
    if isinstance(formula, Eq):
        return Eq(mapping.get(formula.left, formula.left), mapping.get(formula.right, formula.right))
    if isinstance(formula, Not):
        return Not(_substitute(formula.body, mapping))
    if isinstance(formula, (And, Or)):
        return type(formula)(tuple(_substitute(p, mapping) for p in formula.parts))
    if isinstance(formula, BINDERS):
        (variable,), body = _enter_binder((formula.variable,), formula.body, mapping)
        return type(formula)(variable, body)
    if isinstance(formula, QApp):
        return QApp(formula.quantifier, tuple(
            _enter_binder(variables, body, mapping) for variables, body in formula.bindings
        ))
    raise TypeError(f"Not a formula: {formula!r}")


def _enter_binder(variables, body: Formula, mapping: Mapping[str, str]):
    inner = {k: v for k, v in mapping.items() if k not in variables}
    relevant = free_variables(body)
    inner = {k: v for k, v in inner.items() if k in relevant}
    if not inner:
        return tuple(variables), body
    targets = set(inner.values())
    avoid = set(targets) | set(all_variables(body)) | set(inner)
    renamed = []
    for variable in variables:
        if variable in targets:
            new = fresh_variable(avoid, variable)
            avoid.add(new)
            inner[variable] = new
            renamed.append(new)
        else:
            renamed.append(variable)
    return tuple(renamed), _substitute(body, inner)


def alpha_rename(formula: Formula, avoid: Iterable[str]) -> Formula:
    """Rename every bound variable to a fresh name outside ``avoid``."""
    used = set(avoid) | set(all_variables(formula))
    return _alpha(formula, used)


def _alpha(formula: Formula, used: Set[str]) -> Formula:
    if isinstance(formula, Not):
        return Not(_alpha(formula.body, used))
    if isinstance(formula, (And, Or)):
        return type(formula)(tuple(_alpha(p, used) for p in formula.parts))
    if isinstance(formula, BINDERS):
        new = fresh_variable(used, formula.variable)
        used.add(new)
        body = substitute_variables(formula.body, {formula.variable: new})
        return type(formula)(new, _alpha(body, used))
    if isinstance(formula, QApp):
        bindings = []
        for variables, body in formula.bindings:
            renamed = []
            for variable in variables:
                new = fresh_variable(used, variable)
                used.add(new)
                renamed.append(new)
            body = substitute_variables(body, dict(zip(variables, renamed)))
            bindings.append((tuple(renamed), _alpha(body, used)))
        return QApp(formula.quantifier, tuple(bindings))
    return formula


def map_atoms(formula: Formula, replace: Callable[[Atom], Formula]) -> Formula:
    """Rebuild ``formula`` with every relation atom replaced by ``replace(atom)``."""
    if isinstance(formula, Atom):
        return replace(formula)
    if isinstance(formula, Not):
        return Not(map_atoms(formula.body, replace))
    if isinstance(formula, (And, Or)):
        return type(formula)(tuple(map_atoms(p, replace) for p in formula.parts))
    if isinstance(formula, BINDERS):
        return type(formula)(formula.variable, map_atoms(formula.body, replace))
    if isinstance(formula, QApp):
        return QApp(formula.quantifier, tuple(
            (variables, map_atoms(body, replace)) for variables, body in formula.bindings
        ))
    return formula
