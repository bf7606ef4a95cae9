from embq.morphism.engine import (
    automorphisms,
    bi_embeddable,
    check_embedding,
    check_homomorphism,
    check_isomorphism,
    compose,
    embeds,
    enumerate_morphisms,
    find_embedding,
    find_morphism,
    invert,
    is_isomorphic,
    iter_morphisms,
)
from embq.morphism.models import MorphismKind, MorphismQuery, PartialMap
from embq.morphism.reduction import f_transform, hom_closure_member, transformed_vocabulary

__all__ = [
    "MorphismKind",
    "MorphismQuery",
    "PartialMap",
    "automorphisms",
    "bi_embeddable",
    "check_embedding",
    "check_homomorphism",
    "check_isomorphism",
    "compose",
    "embeds",
    "enumerate_morphisms",
    "f_transform",
    "find_embedding",
    "find_morphism",
    "hom_closure_member",
    "invert",
    "is_isomorphic",
    "iter_morphisms",
    "transformed_vocabulary",
]
