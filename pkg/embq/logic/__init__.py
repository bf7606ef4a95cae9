from embq.logic.evaluator import compile_formula, evaluate, satisfying_tuples, sentence_holds
from embq.logic.interpretation import (
    apply_interpretation,
    check_defining_sentence,
    homomorphism_reduction,
    interpretation,
    rewrite_defined_quantifier,
    substitute_interpretation,
)
from embq.logic.models import (
    And,
    Atom,
    Bottom,
    CliqueAtLeast,
    CountAtLeast,
    EmbeddingClosure,
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
    SubstructureClosedComplement,
    Top,
)
from embq.logic.parser import parse_formula, parse_sentence
from embq.logic.quantifiers import (
    EXISTS,
    QuantifierRegistry,
    complement_of,
    count_at_least,
    embedding_closure,
    quantifier_member,
)
from embq.logic.syntax import (
    format_formula,
    free_variables,
    is_quantifier_free,
    quantifier_rank,
    substitute_variables,
    variable_count,
)

__all__ = [
    "And",
    "Atom",
    "Bottom",
    "CliqueAtLeast",
    "CountAtLeast",
    "EXISTS",
    "EmbeddingClosure",
    "Eq",
    "Exists",
    "Forall",
    "Formula",
    "HomomorphismClosure",
    "Interpretation",
    "Not",
    "Or",
    "QApp",
    "QuantifierDef",
    "QuantifierRegistry",
    "SubstructureClosedComplement",
    "Top",
    "apply_interpretation",
    "check_defining_sentence",
    "compile_formula",
    "complement_of",
    "count_at_least",
    "embedding_closure",
    "evaluate",
    "format_formula",
    "free_variables",
    "homomorphism_reduction",
    "interpretation",
    "is_quantifier_free",
    "parse_formula",
    "parse_sentence",
    "quantifier_member",
    "quantifier_rank",
    "rewrite_defined_quantifier",
    "satisfying_tuples",
    "sentence_holds",
    "substitute_interpretation",
    "substitute_variables",
    "variable_count",
]
