"""
Formula Parser
==============

LALR grammar for formulas::

    true | false | R(x,y) | x = y | x != y | !f | f & g | f | g
    exists x y. f | forall x. f | Q[x,y: f; z: g] | (f)

``&`` binds tighter than ``|``; a quantifier body extends as far to the
right as possible, so ``exists x. E(x,x) & U(x)`` quantifies both atoms.
Chains of ``&`` or ``|`` become one ``And``/``Or`` node; parenthesized
operands are kept as separate nodes.
"""

import logging
from typing import Mapping, Optional

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from embq.core.models import Vocabulary
from embq.logic.models import And, Atom, Bottom, Eq, Exists, Forall, Not, Or, QApp, QuantifierDef, Top
from embq.shared.exceptions import EmbqException, FormulaSyntaxException

logger = logging.getLogger(__name__)

FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: disj
            | odisj

    ?disj: conj
         | disj "|" conj              -> or_
    ?odisj: oconj
          | disj "|" oconj            -> or_

    ?conj: unary
         | conj "&" unary             -> and_
    ?oconj: ounary
          | conj "&" ounary           -> and_

    ?unary: "!" unary                 -> not_
          | atomic
    ?ounary: "!" ounary               -> not_
           | quantified

    quantified: qblock+ "." formula
    qblock: QUANT NAME+

    ?atomic: "true"                   -> top
           | "false"                  -> bottom
           | NAME "(" NAME ("," NAME)* ")"   -> atom
           | NAME "=" NAME            -> eq
           | NAME "!=" NAME           -> neq
           | NAME "[" binding (";" binding)* "]"  -> qapp
           | "(" formula ")"          -> group

    binding: NAME ("," NAME)* ":" formula

    QUANT.2: "exists" | "forall"
    NAME: /[A-Za-z_][A-Za-z0-9_']*/

    %import common.WS
    %ignore WS
"""

_PARSER = Lark(FORMULA_GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=False)


class _Group:
    """Marks a parenthesized operand so chains do not absorb it."""

    def __init__(self, formula):
        self.formula = formula


def _u(node):
    return node.formula if isinstance(node, _Group) else node


class FormulaBuilder(Transformer):
    """Turns the parse tree into formula nodes, resolving symbols as it goes."""

    def __init__(self, vocab: Optional[Vocabulary], registry: Mapping[str, QuantifierDef]):
        super().__init__()
        self.vocab = vocab
        self.registry = registry

    def _fail(self, message: str, token: Token):
        raise FormulaSyntaxException(message, getattr(token, "line", None), getattr(token, "column", None))

    def top(self, _):
        return Top()

    def bottom(self, _):
        return Bottom()

    def group(self, children):
        return _Group(_u(children[0]))

    def not_(self, children):
        return Not(_u(children[0]))

    def and_(self, children):
        left, right = children
        parts = left.parts if isinstance(left, And) else (_u(left),)
        return And(parts + (_u(right),))

    def or_(self, children):
        left, right = children
        parts = left.parts if isinstance(left, Or) else (_u(left),)
        return Or(parts + (_u(right),))

    def atom(self, children):
        name, *terms = children
        if self.vocab is not None:
            if name not in self.vocab:
                self._fail(f"unknown relation symbol {name}", name)
            arity = self.vocab.arity(str(name))
            if arity != len(terms):
                self._fail(f"{name} has arity {arity}, applied to {len(terms)} terms", name)
        return Atom(str(name), tuple(str(t) for t in terms))

    def eq(self, children):
        return Eq(str(children[0]), str(children[1]))

    def neq(self, children):
        return Not(Eq(str(children[0]), str(children[1])))

    def binding(self, children):
        *variables, body = children
        return tuple(str(v) for v in variables), _u(body)

    def qapp(self, children):
        name, *bindings = children
        quantifier = self.registry.get(str(name))
        if quantifier is None:
            self._fail(f"unknown quantifier {name}", name)
        if len(bindings) != len(quantifier.sigma):
            self._fail(
                f"{name} takes {len(quantifier.sigma)} bindings, got {len(bindings)}", name
            )
        for (symbol, arity), (variables, _) in zip(quantifier.sigma, bindings):
            if len(variables) != arity:
                self._fail(
                    f"{name}: binding for {symbol} needs {arity} variables, got {len(variables)}", name
                )
        return QApp(quantifier, tuple(bindings))

    def qblock(self, children):
        return str(children[0]), [str(v) for v in children[1:]]

    def quantified(self, children):
        *blocks, body = children
        result = _u(body)
        for kind, variables in reversed(blocks):
            node = Exists if kind == "exists" else Forall
            for variable in reversed(variables):
                result = node(variable, result)
        return result


def parse_formula(text: str, vocab: Optional[Vocabulary] = None,
                  registry: Optional[Mapping[str, QuantifierDef]] = None):
    """
    Parse a formula.

    Args:
        text: Formula source
        vocab: Vocabulary for relation and arity checks (skipped when None)
        registry: Quantifier name to definition

    Returns:
        The formula AST

    Raises:
        FormulaSyntaxException: On syntax errors, unknown symbols and arity
            mismatches, with line and column
    """
    registry = registry or {}
    try:
        tree = _PARSER.parse(text)
    except UnexpectedEOF as exc:
        raise FormulaSyntaxException("unexpected end of formula", exc.line if exc.line > 0 else None,
                                     exc.column if exc.column > 0 else None)
    except UnexpectedCharacters as exc:
        raise FormulaSyntaxException(f"unexpected character {text[exc.pos_in_stream]!r}",
                                     exc.line, exc.column)
    except UnexpectedInput as exc:
        token = getattr(exc, "token", None)
        found = f" {str(token)!r}" if token else ""
        raise FormulaSyntaxException(f"unexpected token{found}", exc.line, exc.column)
    try:
        result = FormulaBuilder(vocab, registry).transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, EmbqException):
            raise exc.orig_exc
        raise
    return _u(result)


def parse_sentence(text: str, vocab: Optional[Vocabulary] = None,
                   registry: Optional[Mapping[str, QuantifierDef]] = None):
    from embq.logic.syntax import free_variables

    formula = parse_formula(text, vocab, registry)
    free = free_variables(formula)
    if free:
        raise FormulaSyntaxException(f"sentence expected, free variables {sorted(free)}")
    return formula
