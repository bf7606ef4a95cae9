"""
Formula and Quantifier Models
=============================

Immutable formula AST for first-order logic with generalized quantifiers,
the quantifier definitions those formulas refer to, and interpretations.

Terms are variables only. ``QApp`` carries its :class:`QuantifierDef`
directly, so a parsed formula can be evaluated without the registry it was
parsed against.
"""

from dataclasses import dataclass
from typing import Tuple, Union

from embq.core.models import Structure, Vocabulary
from embq.shared.exceptions import NotFoundException, ValidationException, VocabularyMismatchException


class Formula:
    """Base class of all formula nodes."""

    def __str__(self) -> str:
        from embq.logic.syntax import format_formula

        return format_formula(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    pass


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    pass


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    relation: str
    terms: Tuple[str, ...]


@dataclass(frozen=True, repr=False)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True, repr=False)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, repr=False)
class And(Formula):
    parts: Tuple[Formula, ...]


@dataclass(frozen=True, repr=False)
class Or(Formula):
    parts: Tuple[Formula, ...]


@dataclass(frozen=True, repr=False)
class Exists(Formula):
    variable: str
    body: Formula


@dataclass(frozen=True, repr=False)
class Forall(Formula):
    variable: str
    body: Formula


Binding = Tuple[Tuple[str, ...], Formula]


@dataclass(frozen=True, repr=False)
class QApp(Formula):
    """Generalized quantifier applied to one binding per symbol of its vocabulary."""

    quantifier: "QuantifierDef"
    bindings: Tuple[Binding, ...]

    def __post_init__(self):
        sigma = self.quantifier.sigma
        if len(self.bindings) != len(sigma):
            raise ValidationException(
                f"{self.quantifier.name} takes {len(sigma)} bindings, got {len(self.bindings)}"
            )
        for (name, arity), (variables, _) in zip(sigma, self.bindings):
            if len(variables) != arity:
                raise ValidationException(
                    f"Binding for {name} in {self.quantifier.name} needs {arity} variables, "
                    f"got {len(variables)}"
                )
            if len(set(variables)) != len(variables):
                raise ValidationException(
                    f"Binding for {name} in {self.quantifier.name} repeats a variable"
                )


@dataclass(frozen=True)
class EmbeddingClosure:
    generators: Tuple[Structure, ...]


@dataclass(frozen=True)
class HomomorphismClosure:
    generators: Tuple[Structure, ...]


@dataclass(frozen=True)
class SubstructureClosedComplement:
    inner: "QuantifierDef"


@dataclass(frozen=True)
class CountAtLeast:
    k: int


@dataclass(frozen=True)
class CliqueAtLeast:
    """At least k elements all of whose tuples lie in the single relation."""

    k: int


Semantics = Union[EmbeddingClosure, HomomorphismClosure, SubstructureClosedComplement, CountAtLeast, CliqueAtLeast]


@dataclass(frozen=True)
class QuantifierDef:
    name: str
    sigma: Vocabulary
    semantics: Semantics

    def __post_init__(self):
        semantics = self.semantics
        if not self.name:
            raise ValidationException("Quantifier name must be nonempty")
        if len(self.sigma) == 0:
            raise ValidationException(f"{self.name}: quantifier vocabulary is empty")
        if isinstance(semantics, (EmbeddingClosure, HomomorphismClosure)):
            if not semantics.generators:
                raise ValidationException(f"{self.name}: generator list is empty")
            for generator in semantics.generators:
                if generator.vocab != self.sigma:
                    raise VocabularyMismatchException(
                        f"{self.name}: generator over {generator.vocab}, expected {self.sigma}"
                    )
        elif isinstance(semantics, CountAtLeast):
            if len(self.sigma) != 1 or self.sigma.relations[0][1] != 1:
                raise ValidationException(f"{self.name}: counting needs a single unary symbol")
            if semantics.k < 0:
                raise ValidationException(f"{self.name}: k must be non-negative")
        elif isinstance(semantics, CliqueAtLeast):
            if len(self.sigma) != 1:
                raise ValidationException(f"{self.name}: clique quantifier needs a single symbol")
            if semantics.k < 0:
                raise ValidationException(f"{self.name}: k must be non-negative")
        elif isinstance(semantics, SubstructureClosedComplement):
            if semantics.inner.sigma != self.sigma:
                raise VocabularyMismatchException(
                    f"{self.name}: inner quantifier over {semantics.inner.sigma}, expected {self.sigma}"
                )
        else:
            raise ValidationException(f"{self.name}: unknown semantics {type(semantics).__name__}")

    @property
    def embedding_closed(self) -> bool:
        return not isinstance(self.semantics, SubstructureClosedComplement)

    @property
    def kind(self) -> str:
        return {
            EmbeddingClosure: "embedding_closure",
            HomomorphismClosure: "homomorphism_closure",
            SubstructureClosedComplement: "substructure_complement",
            CountAtLeast: "count_at_least",
            CliqueAtLeast: "clique_at_least",
        }[type(self.semantics)]


@dataclass(frozen=True)
class Interpretation:
    """Definitions of the symbols of ``sigma`` by formulas over another vocabulary."""

    sigma: Vocabulary
    defs: Tuple[Tuple[str, Tuple[str, ...], Formula], ...]

    def __post_init__(self):
        from embq.logic.syntax import free_variables

        for name, variables, body in self.defs:
            arity = self.sigma.arity(name)
            if len(variables) != arity:
                raise ValidationException(
                    f"Definition of {name} has {len(variables)} variables, arity is {arity}"
                )
            stray = free_variables(body) - set(variables)
            if stray:
                raise ValidationException(
                    f"Definition of {name} has free variables {sorted(stray)} outside {list(variables)}"
                )

    def definition(self, name: str) -> Tuple[Tuple[str, ...], Formula]:
        for symbol, variables, body in self.defs:
            if symbol == name:
                return variables, body
        raise NotFoundException("Definition of relation symbol", name)
