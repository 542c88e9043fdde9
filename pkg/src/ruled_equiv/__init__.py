"""Affine equivalences, isometries and symmetries of rational ruled surfaces."""

from .engine import (Equivalence, EquivalenceSet, InfiniteFamily, affine_equivalences,
                     equivalences, mobius_numerator, reparam_candidates, verify)
from .isometry import (IsometryKind, classify_isometry, involutions, isometries, kind_tally,
                       norm_conditions, similarities, symmetries)
from .maps import AffineMap, MobiusMap, Reparam
from .special import CylindricalReduction, conical_equivalences, cylindrical_reduce
from .surface import (RuledSurface, SurfaceClass, apply_affine, classify, direction_profile,
                      normalize)

__all__ = [
    "AffineMap", "CylindricalReduction", "Equivalence", "EquivalenceSet", "InfiniteFamily",
    "IsometryKind", "MobiusMap", "Reparam", "RuledSurface", "SurfaceClass",
    "affine_equivalences", "apply_affine", "classify", "classify_isometry",
    "conical_equivalences", "cylindrical_reduce", "direction_profile", "equivalences",
    "involutions", "isometries", "kind_tally", "mobius_numerator", "normalize",
    "norm_conditions", "reparam_candidates", "similarities", "symmetries", "verify",
]
