import logging
from itertools import product
from typing import Optional, Sequence

from embq.core.models import Structure
from embq.core.types import atomic_type
from embq.morphism.engine import embeds
from embq.shared.config import settings
from embq.shared.exceptions import ResourceCapExceeded, VocabularyMismatchException

logger = logging.getLogger(__name__)


def extension_property_holds(source: Structure, assignment: Sequence[str], target: Structure,
                             cap: Optional[int] = None) -> bool:
    """
    Check that (A, a) embeds into (B, b) for every b in B realizing the type of a.

    Vacuously true when the type is not realized in B.

    Raises:
        VocabularyMismatchException: If A and B differ in vocabulary
        ResourceCapExceeded: If A exceeds the size cap
    """
    if source.vocab != target.vocab:
        raise VocabularyMismatchException(f"Vocabularies differ: {source.vocab} vs {target.vocab}")
    cap = settings.CAP_SIZE if cap is None else cap
    if source.size > cap:
        raise ResourceCapExceeded("size", cap, source.size)
    assignment = tuple(assignment)
    source.require_elements(assignment)
    wanted = atomic_type(source, assignment)
    for image in product(target.universe, repeat=len(assignment)):
        if atomic_type(target, image) != wanted:
            continue
        if not embeds(source, target, dict(zip(assignment, image))):
            logger.debug(f"No extension for {list(image)}")
            return False
    return True
