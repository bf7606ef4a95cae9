"""
Canonical Forms
===============

Brute-force canonical labeling and up-to-isomorphism enumeration of small
structures.

The canonical form of a structure is the lexicographically least relation
encoding over all relabelings that list elements by increasing degree
profile. The degree profile is isomorphism-invariant, so every isomorphism
maps this family of relabelings onto itself and the minimum is a complete
invariant.
"""

import logging
from itertools import chain, combinations, permutations, product
from typing import Dict, Iterator, List, Optional, Tuple

from embq.core.models import Structure, Vocabulary
from embq.shared.config import settings
from embq.shared.exceptions import ResourceCapExceeded

logger = logging.getLogger(__name__)

CanonicalForm = Tuple[int, Tuple[Tuple[Tuple[int, ...], ...], ...]]


def _ordered_cells(structure: Structure) -> List[List[str]]:
    profiles = structure.degree_profile
    cells: Dict[tuple, List[str]] = {}
    for element in structure.universe:
        cells.setdefault(profiles[element], []).append(element)
    return [cells[key] for key in sorted(cells)]


def _relabelings(cells: List[List[str]]) -> Iterator[Tuple[str, ...]]:
    for parts in product(*(permutations(cell) for cell in cells)):
        yield tuple(chain.from_iterable(parts))


def canonical_form(structure: Structure, cap: Optional[int] = None) -> CanonicalForm:
    """
    Compute a complete isomorphism invariant.

    Args:
        structure: Structure with at most ``cap`` elements
        cap: Size cap, default ``EMBQ_CAP_CANONICAL``

    Returns:
        Tuple of the universe size and, per relation, the sorted encoded tuples

    Raises:
        ResourceCapExceeded: If the structure is larger than the cap
    """
    cap = settings.CAP_CANONICAL if cap is None else cap
    if structure.size > cap:
        logger.warning(f"canonical_form refused for a structure of size {structure.size}")
        raise ResourceCapExceeded("canonical", cap, structure.size)

    best = None
    for order in _relabelings(_ordered_cells(structure)):
        index = {element: i for i, element in enumerate(order)}
        encoding = tuple(
            tuple(sorted(tuple(index[e] for e in t) for t in tuples))
            for tuples in structure.relations
        )
        if best is None or encoding < best:
            best = encoding
    return structure.size, best if best is not None else tuple(() for _ in structure.relations)


def canonical_structure(structure: Structure) -> Structure:
    """Representative with universe ``0..n-1`` realizing the canonical encoding."""
    size, encoding = canonical_form(structure)
    universe = tuple(str(i) for i in range(size))
    relations = tuple(
        frozenset(tuple(universe[i] for i in t) for t in tuples)
        for tuples in encoding
    )
    return Structure(structure.vocab, universe, relations)


def _all_tuples(vocab: Vocabulary, universe: Tuple[str, ...]) -> List[Tuple[int, Tuple[str, ...]]]:
    return [
        (r, args)
        for r, (_, arity) in enumerate(vocab)
        for args in product(universe, repeat=arity)
    ]


def enumerate_structures(vocab: Vocabulary, max_size: int, min_size: int = 0,
                         cap: Optional[int] = None) -> Iterator[Structure]:
    """
    Yield every structure of size ``min_size..max_size`` once up to isomorphism.

    Universes are ``"0".."n-1"``. Labeled structures are generated in order of
    their characteristic vectors and the first member of each isomorphism
    class is yielded.

    Raises:
        ResourceCapExceeded: If the labeled count would exceed the enumeration cap
    """
    cap = settings.CAP_ENUMERATION if cap is None else cap
    total = sum(
        2 ** sum(n ** arity for _, arity in vocab)
        for n in range(min_size, max_size + 1)
    )
    if total > cap:
        logger.warning(f"Refusing to enumerate {total} labeled structures over {vocab}")
        raise ResourceCapExceeded("enumeration", cap, total)

    for n in range(min_size, max_size + 1):
        universe = tuple(str(i) for i in range(n))
        slots = _all_tuples(vocab, universe)
        seen = set()
        for bits in product((False, True), repeat=len(slots)):
            buckets: List[set] = [set() for _ in range(len(vocab))]
            for (r, args), bit in zip(slots, bits):
                if bit:
                    buckets[r].add(args)
            structure = Structure(vocab, universe, tuple(frozenset(b) for b in buckets))
            key = canonical_form(structure)
            if key in seen:
                continue
            seen.add(key)
            yield structure
        logger.info(f"Enumerated {len(seen)} isomorphism classes of size {n} over {vocab}")


def all_subsets(elements: Tuple[str, ...], max_size: Optional[int] = None) -> Iterator[Tuple[str, ...]]:
    """Subsets by increasing size, each in universe order."""
    top = len(elements) if max_size is None else min(max_size, len(elements))
    for k in range(top + 1):
        yield from combinations(elements, k)
