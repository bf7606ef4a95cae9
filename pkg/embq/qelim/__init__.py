from embq.qelim.antichain import stabilizer_antichain
from embq.qelim.describe import describe_structure, embeddability_sentence
from embq.qelim.elimination import eliminate_quantifiers, stabilize_formula, stabilize_interpreted, type_chain
from embq.qelim.homogeneity import is_quasi_homogeneous, verify_counterexample
from embq.qelim.models import (
    Chain,
    EliminationResult,
    HomogeneityReport,
    StabilizationResult,
    StabilizerEntry,
    TypeChainReport,
)

__all__ = [
    "Chain",
    "EliminationResult",
    "HomogeneityReport",
    "StabilizationResult",
    "StabilizerEntry",
    "TypeChainReport",
    "describe_structure",
    "eliminate_quantifiers",
    "embeddability_sentence",
    "is_quasi_homogeneous",
    "stabilize_formula",
    "stabilize_interpreted",
    "stabilizer_antichain",
    "type_chain",
    "verify_counterexample",
]
