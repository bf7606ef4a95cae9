"""
Homogeneity Checking
====================

A finite structure is quasi-homogeneous iff any two tuples of equal atomic
type are related by a self-embedding. Self-embeddings of a finite structure
are automorphisms, and repeated entries reduce to the distinct support, so
the check works on subsets: for every subset S,

* every subset whose induced substructure is isomorphic to A[S] lies in the
  orbit of S under the automorphism group, and
* every automorphism of A[S] is the restriction of an automorphism of A
  fixing S setwise.

Subsets are visited by increasing size and the first failure yields a pair
of tuples with equal atomic type that no self-map relates.
"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, List, Optional, Tuple

from embq.core.algebra import induced_substructure
from embq.core.models import Structure
from embq.core.types import atomic_type
from embq.morphism.engine import automorphisms, find_morphism
from embq.morphism.models import MorphismKind, MorphismQuery
from embq.qelim.models import HomogeneityReport
from embq.shared.config import settings
from embq.shared.exceptions import ResourceCapExceeded, ValidationException

logger = logging.getLogger(__name__)


def _invariant(structure: Structure) -> tuple:
    return tuple(sorted(structure.degree_profile.values()))


def _failure(structure: Structure, kind: MorphismKind, left: Tuple[str, ...],
             right: Tuple[str, ...], group_order: int) -> HomogeneityReport:
    logger.info(f"Not homogeneous: {list(left)} vs {list(right)}")
    return HomogeneityReport(structure, False, (left, right), kind.value, group_order)


@lru_cache(maxsize=256)
def _check(structure: Structure, kind: MorphismKind) -> HomogeneityReport:
    group = automorphisms(structure, kind)
    order = len(group)
    logger.info(f"Checking homogeneity of a {structure.size}-element structure, group order {order}")
    universe = structure.universe

    for k in range(1, structure.size + 1):
        visited: set = set()
        representatives: List[Tuple[FrozenSet[str], Structure, tuple]] = []
        for subset in combinations(universe, k):
            key = frozenset(subset)
            if key in visited:
                continue
            induced = induced_substructure(structure, key)
            invariant = _invariant(induced)

            for _, rep_induced, rep_invariant in representatives:
                if rep_invariant != invariant:
                    continue
                iso = find_morphism(MorphismQuery.build(MorphismKind.ISOMORPHISM, rep_induced, induced))
                if iso is not None:
                    left = rep_induced.universe
                    return _failure(structure, kind, left, tuple(iso[a] for a in left), order)

            orbit = {frozenset(g[a] for a in key) for g in group}
            visited |= orbit
            representatives.append((key, induced, invariant))

            restrictions = {
                tuple(g[a] for a in induced.universe)
                for g in group
                if frozenset(g[a] for a in key) == key
            }
            local = automorphisms(induced, MorphismKind.ISOMORPHISM)
            if len(restrictions) < len(local):
                for sigma in local:
                    image = tuple(sigma[a] for a in induced.universe)
                    if image not in restrictions:
                        return _failure(structure, kind, induced.universe, image, order)
    return HomogeneityReport(structure, True, None, kind.value, order)


def is_quasi_homogeneous(structure: Structure, kind: MorphismKind = MorphismKind.ISOMORPHISM,
                         cap: Optional[int] = None) -> HomogeneityReport:
    """
    Check that every isomorphism between substructures extends to a self-map.

    Args:
        structure: Finite structure
        kind: Self-maps searched, automorphisms or self-embeddings (equal on finite structures)
        cap: Size cap, default ``EMBQ_CAP_SIZE``

    Returns:
        HomogeneityReport, truthy when homogeneous, with a counterexample pair otherwise

    Raises:
        ResourceCapExceeded: If the structure exceeds the size cap
    """
    cap = settings.CAP_SIZE if cap is None else cap
    if structure.size > cap:
        logger.warning(f"Homogeneity check refused for {structure.size} elements")
        raise ResourceCapExceeded("size", cap, structure.size)
    if kind is MorphismKind.HOMOMORPHISM:
        raise ValidationException("Homogeneity is defined through injective self-maps")
    return _check(structure, kind)


def verify_counterexample(report: HomogeneityReport) -> bool:
    """True iff the reported tuples share an atomic type and no self-map relates them."""
    if report.counterexample is None:
        return False
    left, right = report.counterexample
    structure = report.structure
    if atomic_type(structure, left) != atomic_type(structure, right):
        return False
    query = MorphismQuery.build(MorphismKind.EMBEDDING, structure, structure, dict(zip(left, right)))
    return find_morphism(query) is None

