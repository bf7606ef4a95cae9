"""
Stabilizer Antichains
=====================

A member A of a catalog H stabilizes a sentence within H when every member
A embeds into has the same truth value as A. The search below returns a
minimal antichain of stabilizers such that every member of H is comparable
with one of them.
"""

import logging
from typing import List, Optional, Sequence

from embq.core.models import Structure
from embq.logic.evaluator import sentence_holds
from embq.logic.models import Formula
from embq.morphism.engine import embeds
from embq.qelim.models import StabilizerEntry
from embq.shared.exceptions import ValidationException, VerificationFailure, VocabularyMismatchException

logger = logging.getLogger(__name__)


class _Order:
    def __init__(self, members: Sequence[Structure], formula: Formula):
        self.members = list(members)
        n = len(self.members)
        self.truth = [sentence_holds(s, formula) for s in self.members]
        self.leq = [[i == j or embeds(self.members[i], self.members[j]) for j in range(n)] for i in range(n)]
        self.height = [sum(self.leq[j][i] for j in range(n) if j != i) for i in range(n)]
        self.stabilizers = [
            i for i in range(n)
            if all(self.truth[j] == self.truth[i] for j in range(n) if self.leq[i][j])
        ]

    def comparable(self, i: int, j: int) -> bool:
        return self.leq[i][j] or self.leq[j][i]

    def covered(self, chosen: Sequence[int]) -> List[bool]:
        return [any(self.comparable(i, c) for c in chosen) for i in range(len(self.members))]

    def search(self, chosen: List[int]) -> Optional[List[int]]:
        covered = self.covered(chosen)
        if all(covered):
            return list(chosen)
        first = covered.index(False)
        candidates = sorted(
            (c for c in self.stabilizers
             if self.comparable(first, c) and not any(self.comparable(c, d) for d in chosen)),
            key=lambda c: (self.height[c], c)
        )
        for c in candidates:
            chosen.append(c)
            found = self.search(chosen)
            chosen.pop()
            if found is not None:
                return found
        return None

    def prune(self, chosen: List[int]) -> List[int]:
        for c in sorted(chosen, key=lambda c: (-self.height[c], -c)):
            rest = [d for d in chosen if d != c]
            if rest and all(self.covered(rest)):
                chosen = rest
        return sorted(chosen)


def stabilizer_antichain(members: Sequence[Structure], formula: Formula) -> List[StabilizerEntry]:
    """
    Find a minimal antichain of stabilizers covering a finite catalog.

    Candidates are tried lowest first, ties broken by catalog order, so the
    lowest stabilizers that still form an antichain are preferred.

    Args:
        members: Finite catalog over one vocabulary
        formula: Sentence

    Returns:
        Entries with the stabilizer, its truth value and its catalog position

    Raises:
        ValidationException: If the catalog is empty
        VocabularyMismatchException: If members differ in vocabulary
    """
    members = list(members)
    if not members:
        raise ValidationException("Stabilizer search needs a nonempty catalog")
    if any(m.vocab != members[0].vocab for m in members):
        raise VocabularyMismatchException("Catalog members must share one vocabulary")

    order = _Order(members, formula)
    logger.info(f"Stabilizer search over {len(members)} structures, {len(order.stabilizers)} stabilizers")
    found = order.search([])
    if found is None:
        raise VerificationFailure("No stabilizer antichain covers the catalog")
    chosen = order.prune(found)
    return [StabilizerEntry(members[i], order.truth[i], i) for i in chosen]
