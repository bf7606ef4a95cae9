from itertools import combinations, product

import numpy as np
import pytest

from embq.core.algebra import relabel
from embq.core.catalog import COLORS, GRAPH, catalog_generate
from embq.core.models import TypeDisjunction
from embq.core.types import enumerate_atomic_types
from embq.logic.evaluator import evaluate, sentence_holds
from embq.logic.parser import parse_formula
from embq.morphism.engine import embeds
from embq.morphism.models import MorphismKind
from embq.qelim.antichain import stabilizer_antichain
from embq.qelim.describe import describe_structure, embeddability_sentence
from embq.qelim.elimination import eliminate_quantifiers, stabilize_formula, stabilize_interpreted, type_chain
from embq.qelim.homogeneity import is_quasi_homogeneous, verify_counterexample
from embq.qelim.models import Chain
from embq.qelim.schemas import HomogeneityReportSchema, StabilizationReportSchema, TypeChainReportSchema
from embq.shared.exceptions import (
    ChainTooShortException,
    NotQuasiHomogeneousException,
    ResourceCapExceeded,
    ValidationException,
    VocabularyMismatchException,
)


def test_pentagon_is_homogeneous(pentagon):
    """Test that the pentagon passes the checker."""
    report = is_quasi_homogeneous(pentagon)
    assert report.homogeneous
    assert report.group_order == 10


def test_disjoint_cliques_are_homogeneous(i2k3):
    """Test that I2[K3] passes the checker."""
    assert is_quasi_homogeneous(i2k3)
    assert is_quasi_homogeneous(i2k3, MorphismKind.EMBEDDING)


def test_rook_graph_is_homogeneous():
    """Test that K3 x K3 passes the checker."""
    assert is_quasi_homogeneous(catalog_generate("k3xk3"))


def test_homogeneity_catalog():
    """Test the homogeneous and non-homogeneous catalog structures."""
    for m in range(1, 4):
        for n in range(1, 4):
            assert is_quasi_homogeneous(catalog_generate("ImKn", {"m": m, "n": n})), (m, n)
    report = is_quasi_homogeneous(catalog_generate("cycle", {"n": 4, "minus_edge": "true"}))
    assert not report.homogeneous
    assert verify_counterexample(report)


def test_path_is_not_homogeneous(path3):
    """Test that path(3) fails with a verifiable counterexample."""
    report = is_quasi_homogeneous(path3)
    assert not report.homogeneous
    assert verify_counterexample(report)


def test_homogeneity_size_cap(pentagon):
    """Test that the size cap is enforced."""
    with pytest.raises(ResourceCapExceeded):
        is_quasi_homogeneous(pentagon, cap=4)


def test_homogeneity_report_schema(path3):
    """Test the JSON report of a failed check."""
    schema = HomogeneityReportSchema.from_report(is_quasi_homogeneous(path3))
    assert schema.homogeneous is False
    assert len(schema.counterexample[0]) == len(schema.counterexample[1])


def test_eliminate_on_disjoint_edges(i2k2):
    """Test that every vertex of I2[K2] has a neighbor."""
    formula = parse_formula("exists y. E(x,y)", GRAPH)
    result = eliminate_quantifiers(i2k2, formula)
    assert result.theta.variables == ("x",)
    for element in i2k2.universe:
        assert evaluate(i2k2, result.formula, {"x": element})


def test_eliminate_on_pentagon(pentagon):
    """Test that every pentagon vertex has two distinct neighbors."""
    formula = parse_formula("exists y z. E(x,y) & E(x,z) & y != z", GRAPH)
    result = eliminate_quantifiers(pentagon, formula)
    for element in pentagon.universe:
        assert evaluate(pentagon, result.formula, {"x": element})


def test_eliminate_agrees_on_pairs(pentagon):
    """Test that the equivalent agrees with the formula on every pair."""
    formula = parse_formula("exists z. E(x,z) & E(z,y) & x != y", GRAPH)
    result = eliminate_quantifiers(pentagon, formula)
    for a, b in product(pentagon.universe, repeat=2):
        env = {"x": a, "y": b}
        assert evaluate(pentagon, result.formula, env) == evaluate(pentagon, formula, env)


def test_eliminate_quantifier_free_formula(k3):
    """Test that a quantifier-free formula keeps its realized types."""
    formula = parse_formula("E(x,y)", GRAPH)
    result = eliminate_quantifiers(k3, formula)
    assert len(result.theta) == 1


def test_eliminate_refuses_non_homogeneous(path3):
    """Test that path(3) is refused with the counterexample."""
    with pytest.raises(NotQuasiHomogeneousException) as excinfo:
        eliminate_quantifiers(path3, parse_formula("exists y. E(x,y)", GRAPH))
    assert "not quasi-homogeneous" in excinfo.value.message


def test_eliminate_with_explicit_variables(k3):
    """Test that the variable order may be given and must cover the free variables."""
    formula = parse_formula("E(x,y)", GRAPH)
    assert eliminate_quantifiers(k3, formula, ["y", "x", "z"]).theta.variables == ("y", "x", "z")
    with pytest.raises(ValidationException):
        eliminate_quantifiers(k3, formula, ["x"])


@pytest.mark.slow
def test_eliminate_random_formulas(registry, random_formula, pentagon, k3, i2k2, i2k3):
    """Test elimination on seeded random formulas over every homogeneous catalog structure."""
    rng = np.random.default_rng(42)
    quantifiers = [registry["QK2"], registry["Exists"], registry["Q2"]]
    for structure in (pentagon, k3, i2k2, i2k3, catalog_generate("k3xk3")):
        for _ in range(50):
            formula = random_formula(rng, quantifiers, ["x", "y"], int(rng.integers(4)))
            result = eliminate_quantifiers(structure, formula, ["x", "y"])
            for a, b in product(structure.universe, repeat=2):
                env = {"x": a, "y": b}
                assert evaluate(structure, result.formula, env) == evaluate(structure, formula, env), str(formula)


def test_path_has_no_quantifier_free_equivalent(path3, registry):
    """Test that having two neighbors matches no disjunction of one-variable types on path(3)."""
    formula = parse_formula("Q2[y: E(x,y)]", GRAPH, registry)
    truths = [evaluate(path3, formula, {"x": a}) for a in path3.universe]
    assert truths == [False, True, False]
    types = enumerate_atomic_types(GRAPH, 1)
    for r in range(len(types) + 1):
        for chosen in combinations(types, r):
            theta = TypeDisjunction(("x",), frozenset(chosen))
            assert [theta.holds(path3, (a,)) for a in path3.universe] != truths


def test_type_chain_counting(haertig, registry):
    """Test that |U| >= 3 becomes true at index 4 and stays true."""
    chain = Chain.build(haertig[:7])
    formula = parse_formula("Qhas3[x: U(x)]", COLORS, registry)
    report = type_chain(chain, formula)
    assert report.truths == [False, False, False, False, True, True, True]
    assert report.stabilization_index == 4
    assert report.witnessed
    assert report.monotone


def test_type_chain_constant(k3, qk2, registry):
    """Test that a chain of identical structures stabilizes at once."""
    chain = Chain.build([k3, k3, k3])
    report = type_chain(chain, parse_formula("QK2[x,y: E(x,y)]", GRAPH, registry))
    assert report.stabilization_index == 0
    assert report.witnessed


def test_type_chain_complete_graphs(k1, k2, k3, registry):
    """Test that an edge appears at K2."""
    chain = Chain.build([k1, k2, k3])
    report = type_chain(chain, parse_formula("QK2[x,y: E(x,y)]", GRAPH, registry))
    assert report.stabilization_index == 1
    assert report.truths == [False, True, True]


def test_type_chain_with_free_variable(k1, k2, k3, registry):
    """Test a quantifier application with a parameter."""
    chain = Chain.build([k1, k2, k3])
    report = type_chain(chain, parse_formula("QK2[u,v: E(u,v) & E(x,u)]", GRAPH, registry))
    assert report.variables == ("x",)
    assert [len(t) for t in report.type_sets] == [0, 0, 1]
    assert report.stabilization_index == 2
    assert not report.witnessed


def test_type_chain_requires_quantifier_free_bodies(k3, registry):
    """Test that nested quantifiers are refused."""
    chain = Chain.build([k3, k3])
    with pytest.raises(ValidationException):
        type_chain(chain, parse_formula("QK2[x,y: exists z. E(x,z)]", GRAPH, registry))


def test_type_chain_refuses_non_homogeneous(path3, registry):
    """Test that every chain member is checked."""
    chain = Chain.build([path3, catalog_generate("path", {"n": 4})])
    with pytest.raises(NotQuasiHomogeneousException):
        type_chain(chain, parse_formula("QK2[x,y: E(x,y)]", GRAPH, registry))


def test_chain_requires_embeddings(k3, k2):
    """Test that each member must embed into the next."""
    with pytest.raises(ValidationException):
        Chain.build([k3, k2])


def test_equicardinality_alternates(haertig):
    """Test that |U| = |V| alternates along the colored chain."""
    balanced = [len(a.relation("U")) == len(a.relation("V")) for a in haertig]
    assert balanced == [i % 2 == 1 for i in range(9)]


def test_stabilize_conjunction_of_counts(haertig, registry):
    """Test that |U| >= 3 and |V| >= 3 stabilizes to true."""
    chain = Chain.build(haertig)
    formula = parse_formula("Qhas3[x: U(x)] & Qhas3[x: V(x)]", COLORS, registry)
    result = stabilize_formula(chain, formula)
    assert result.index == 5
    assert len(result.theta) == 1
    for structure in haertig[result.index:]:
        assert sentence_holds(structure, formula)
    assert [s.index for s in result.steps] == [4, 5]


def test_stabilize_negation(haertig, registry):
    """Test that negation keeps the index and flips the equivalent."""
    chain = Chain.build(haertig)
    formula = parse_formula("!Qhas3[x: U(x)] | Qhas3[x: V(x)] & !(U(x) & V(x))", COLORS, registry)
    result = stabilize_formula(chain, formula)
    assert result.index == 5
    for structure in haertig[result.index:]:
        for element in structure.universe:
            assert evaluate(structure, result.formula, {"x": element}) == evaluate(structure, formula, {"x": element})


def test_stabilize_quantifier_free(haertig):
    """Test that a quantifier-free formula is its own equivalent from index 0."""
    chain = Chain.build(haertig[:3])
    result = stabilize_formula(chain, parse_formula("U(x) | V(x)", COLORS))
    assert result.index == 0
    assert result.variables == ("x",)


def test_stabilize_first_order_quantifiers(haertig):
    """Test that ordinary quantifiers are stabilized through the existential quantifier."""
    chain = Chain.build(haertig[:4])
    result = stabilize_formula(chain, parse_formula("forall y. U(y) | V(y) | x = y", COLORS))
    assert result.index == 0
    assert len(result.theta) == len(result.theta.types)


def test_stabilize_chain_too_short(haertig, registry):
    """Test that a chain ending before the last change is reported."""
    chain = Chain.build(haertig[:5])
    formula = parse_formula("Qhas3[x: U(x)]", COLORS, registry)
    with pytest.raises(ChainTooShortException) as excinfo:
        stabilize_formula(chain, formula)
    assert excinfo.value.exit_code == 1


def test_stabilize_interpreted(haertig, regularity):
    """Test stabilization of a graph property through the regularity interpretation."""
    chain = Chain.build(haertig[:6])
    formula = parse_formula("exists x y. E(x,y)", GRAPH)
    result = stabilize_interpreted(chain, regularity, formula)
    assert result.index == 2
    assert len(result.theta) == 1


def test_stabilization_report_schema(haertig, registry):
    """Test the JSON report of a stabilization."""
    chain = Chain.build(haertig)
    formula = parse_formula("Qhas3[x: U(x)]", COLORS, registry)
    schema = StabilizationReportSchema.from_result(str(formula), stabilize_formula(chain, formula), COLORS)
    assert schema.index == 4
    assert schema.theta.formula == "true"
    report = TypeChainReportSchema.from_report(str(formula), type_chain(chain, formula), COLORS)
    assert report.truths[4:] == [True] * 5


def test_antichain_of_disjoint_cliques():
    """Test the stabilizers of having an edge among I_m[K_n], m, n <= 3."""
    members = [catalog_generate("ImKn", {"m": m, "n": n}) for m in range(1, 4) for n in range(1, 4)]
    formula = parse_formula("exists x y. E(x,y)", GRAPH)
    entries = stabilizer_antichain(members, formula)
    chosen = [e.structure for e in entries]
    assert all(e.truth for e in entries)
    for a in chosen:
        for b in chosen:
            assert a is b or not (embeds(a, b) or embeds(b, a))
    for member in members:
        assert any(embeds(member, c) or embeds(c, member) for c in chosen)
    for entry in entries:
        for member in members:
            if embeds(entry.structure, member):
                assert sentence_holds(member, formula) == entry.truth


def test_antichain_singleton(pentagon):
    """Test that a one-member catalog is its own antichain."""
    entries = stabilizer_antichain([pentagon], parse_formula("exists x. E(x,x)", GRAPH))
    assert [e.position for e in entries] == [0]
    assert entries[0].truth is False


def test_antichain_of_a_chain(k1, k2, k3):
    """Test that a totally ordered catalog yields one stabilizer."""
    entries = stabilizer_antichain([k1, k2, k3], parse_formula("exists x y. E(x,y)", GRAPH))
    assert [e.position for e in entries] == [1]


def test_antichain_errors(k2, haertig):
    """Test empty and mixed catalogs."""
    formula = parse_formula("true")
    with pytest.raises(ValidationException):
        stabilizer_antichain([], formula)
    with pytest.raises(VocabularyMismatchException):
        stabilizer_antichain([k2, haertig[1]], formula)


def test_describe_single_vertex(k1, k2):
    """Test the sentence describing K1."""
    sentence = describe_structure(k1)
    assert sentence_holds(relabel(k1, {"v0": "w"}), sentence)
    assert not sentence_holds(k2, sentence)


def test_describe_up_to_isomorphism(path3, path3_reversed, k3, pentagon):
    """Test that the describing sentence holds exactly in isomorphic copies."""
    sentence = describe_structure(path3)
    assert sentence_holds(path3_reversed, sentence)
    assert not sentence_holds(k3, sentence)
    assert not sentence_holds(pentagon, sentence)


def test_embeddability_sentence(k2, k3, i2k1, pentagon):
    """Test the sentence saying that K2 embeds."""
    sentence = embeddability_sentence([k2])
    assert sentence_holds(k3, sentence)
    assert sentence_holds(pentagon, sentence)
    assert not sentence_holds(i2k1, sentence)


def test_embeddability_sentence_errors(k2, haertig):
    """Test empty and mixed structure lists."""
    with pytest.raises(ValidationException):
        embeddability_sentence([])
    with pytest.raises(VocabularyMismatchException):
        embeddability_sentence([k2, haertig[0]])
