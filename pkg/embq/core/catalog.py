"""
Structure Catalog
=================

Named structure generators: the finite homogeneous graphs, paths and cycles,
the two-colored chain used for equicardinality arguments, and finite
equivalence structures.
"""

import logging
from typing import Any, Callable, Dict, List, Mapping

import networkx as nx

from embq.core.models import Structure, Vocabulary
from embq.shared.exceptions import NotFoundException, ValidationException

logger = logging.getLogger(__name__)

GRAPH = Vocabulary.of({"E": 2})
COLORS = Vocabulary.of({"U": 1, "V": 1})


def from_graph(graph: nx.Graph, label: str = "v{}") -> Structure:
    """
    Symmetric loop-free {E:2}-structure of an undirected graph.

    Nodes are renumbered in sorted order and named by ``label``.
    """
    graph = nx.convert_node_labels_to_integers(graph, ordering="sorted")
    universe = [label.format(i) for i in sorted(graph.nodes)]
    edges = []
    for u, v in graph.edges:
        if u != v:
            edges.append((label.format(u), label.format(v)))
            edges.append((label.format(v), label.format(u)))
    return Structure.create(GRAPH, universe, {"E": edges})


def _positive(params: Mapping[str, Any], name: str, minimum: int = 1) -> int:
    if name not in params:
        raise ValidationException(f"Missing parameter: {name}", details={"param": name})
    try:
        value = int(params[name])
    except (TypeError, ValueError):
        raise ValidationException(f"Parameter {name} must be an integer", details={"param": name})
    if value < minimum:
        raise ValidationException(
            f"Parameter {name} must be at least {minimum}",
            details={"param": name, "value": value}
        )
    return value


def complete(n: int) -> Structure:
    return from_graph(nx.complete_graph(n))


def imkn(m: int, n: int) -> Structure:
    """m disjoint copies of K_n."""
    return from_graph(nx.disjoint_union_all([nx.complete_graph(n) for _ in range(m)]))


def pentagon() -> Structure:
    return from_graph(nx.cycle_graph(5), label="{}")


def k3xk3() -> Structure:
    """The rook's graph on a 3x3 board."""
    return from_graph(nx.cartesian_product(nx.complete_graph(3), nx.complete_graph(3)))


def path(n: int) -> Structure:
    return from_graph(nx.path_graph(n))


def cycle(n: int, minus_edge: bool = False) -> Structure:
    graph = nx.cycle_graph(n)
    if minus_edge:
        graph.remove_edge(n - 1, 0)
    return from_graph(graph)


def haertig_chain(i: int) -> Structure:
    """Universe 0..i with U the even and V the odd elements."""
    universe = [str(k) for k in range(i + 1)]
    return Structure.create(COLORS, universe, {
        "U": [(str(k),) for k in range(0, i + 1, 2)],
        "V": [(str(k),) for k in range(1, i + 1, 2)],
    })


def equiv_classes(sizes: List[int]) -> Structure:
    """Equivalence relation with one class per entry of ``sizes``."""
    universe = []
    pairs = []
    for c, size in enumerate(sizes):
        members = [f"c{c}e{j}" for j in range(size)]
        universe.extend(members)
        pairs.extend((a, b) for a in members for b in members)
    return Structure.create(GRAPH, universe, {"E": pairs})


def _sizes(params: Mapping[str, Any]) -> List[int]:
    raw = params.get("sizes")
    if raw is None:
        raise ValidationException("Missing parameter: sizes", details={"param": "sizes"})
    if isinstance(raw, str):
        raw = [part for part in raw.split(",") if part.strip()]
    try:
        sizes = [int(s) for s in raw]
    except (TypeError, ValueError):
        raise ValidationException("Parameter sizes must be a list of integers")
    if any(s < 1 for s in sizes):
        raise ValidationException("Class sizes must be positive", details={"sizes": sizes})
    return sizes


def _flag(params: Mapping[str, Any], name: str) -> bool:
    value = params.get(name, False)
    if isinstance(value, str):
        return value.strip().lower() in ("1", "true", "yes")
    return bool(value)


GENERATORS: Dict[str, Callable[[Mapping[str, Any]], Structure]] = {
    "complete": lambda p: complete(_positive(p, "n", 0)),
    "ImKn": lambda p: imkn(_positive(p, "m"), _positive(p, "n")),
    "pentagon": lambda p: pentagon(),
    "k3xk3": lambda p: k3xk3(),
    "path": lambda p: path(_positive(p, "n")),
    "haertig_chain": lambda p: haertig_chain(_positive(p, "i", 0)),
    "cycle": lambda p: cycle(_positive(p, "n", 3), _flag(p, "minus_edge")),
    "equiv_classes": lambda p: equiv_classes(_sizes(p)),
}


def catalog_generate(name: str, params: Mapping[str, Any] = None) -> Structure:
    """
    Build a named catalog structure.

    Args:
        name: One of :data:`GENERATORS`
        params: Generator parameters (``n``, ``m``, ``i``, ``sizes``, ``minus_edge``)

    Returns:
        The generated structure

    Raises:
        NotFoundException: If the name is unknown
        ValidationException: If parameters are missing or invalid
    """
    if name not in GENERATORS:
        raise NotFoundException("Catalog structure", name)
    structure = GENERATORS[name](dict(params or {}))
    logger.debug(f"Generated catalog structure {name} with {structure.size} elements")
    return structure
