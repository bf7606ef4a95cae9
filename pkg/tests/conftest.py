import pytest

from embq.core.algebra import relabel
from embq.core.catalog import COLORS, GRAPH, catalog_generate
from embq.core.models import Structure
from embq.core.schemas import dump_structure
from embq.logic.interpretation import interpretation
from embq.logic.models import And, Atom, Bottom, Eq, Not, QApp, Top
from embq.logic.parser import parse_formula
from embq.logic.quantifiers import EXISTS, UNARY, QuantifierRegistry, count_at_least, embedding_closure
from embq.shared.config import settings


@pytest.fixture(autouse=True)
def restore_settings():
    """Restore the resource caps after each test."""
    saved = dict(vars(settings))
    yield
    for name in list(vars(settings)):
        if name not in saved:
            delattr(settings, name)
    for name, value in saved.items():
        setattr(settings, name, value)


@pytest.fixture
def k1():
    return catalog_generate("complete", {"n": 1})


@pytest.fixture
def k2():
    return catalog_generate("complete", {"n": 2})


@pytest.fixture
def k3():
    return catalog_generate("complete", {"n": 3})


@pytest.fixture
def i2k1():
    return catalog_generate("ImKn", {"m": 2, "n": 1})


@pytest.fixture
def i2k2():
    return catalog_generate("ImKn", {"m": 2, "n": 2})


@pytest.fixture
def i2k3():
    return catalog_generate("ImKn", {"m": 2, "n": 3})


@pytest.fixture
def pentagon():
    return catalog_generate("pentagon")


@pytest.fixture
def path3():
    return catalog_generate("path", {"n": 3})


@pytest.fixture
def path3_reversed(path3):
    """path(3) with its labels renamed end to end."""
    return relabel(path3, {"v0": "c", "v1": "b", "v2": "a"})


@pytest.fixture
def haertig():
    """The two-colored chain A_0 ... A_8."""
    return [catalog_generate("haertig_chain", {"i": i}) for i in range(9)]


@pytest.fixture
def three_u():
    """Three elements, all in U."""
    return Structure.create(UNARY, ["a", "b", "c"], {"U": [("a",), ("b",), ("c",)]})


@pytest.fixture
def qhas3(three_u):
    """At least three elements satisfy the body."""
    return embedding_closure("Qhas3", [three_u])


@pytest.fixture
def qk2(k2):
    return embedding_closure("QK2", [k2])


@pytest.fixture
def registry(qhas3, qk2):
    return QuantifierRegistry([qhas3, qk2, count_at_least("Q2", 2), EXISTS])


@pytest.fixture
def regularity():
    """Elements are adjacent iff distinct and of the same color."""
    body = parse_formula("x != y & (U(x) & U(y) | V(x) & V(y))", COLORS)
    return interpretation(GRAPH, {"E": (("x", "y"), body)})


@pytest.fixture
def write_structure(tmp_path):
    """Write a structure file and return its path as a string."""
    def write(name, structure):
        path = tmp_path / f"{name}.json"
        path.write_text(dump_structure(structure), encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def random_formula():
    """Sampler of formulas over {E:2} with quantifier nesting at most ``rank``."""
    def sample(rng, quantifiers, variables, rank, budget=4):
        roll = rng.random()
        if budget <= 0 or roll < 0.25:
            if not variables:
                return Top() if rng.random() < 0.5 else Bottom()
            a, b = (variables[i] for i in rng.integers(len(variables), size=2))
            return Atom("E", (a, b)) if rng.random() < 0.7 else Eq(a, b)
        if roll < 0.45:
            return Not(sample(rng, quantifiers, variables, rank, budget - 1))
        if roll < 0.65 or rank == 0:
            return And(tuple(sample(rng, quantifiers, variables, rank, budget - 1) for _ in range(2)))
        quantifier = quantifiers[rng.integers(len(quantifiers))]
        bindings = []
        for i, (_, arity) in enumerate(quantifier.sigma):
            bound = tuple(f"b{rank}_{i}_{j}" for j in range(arity))
            bindings.append((bound, sample(rng, quantifiers, variables + list(bound), rank - 1, budget - 1)))
        return QApp(quantifier, tuple(bindings))
    return sample
