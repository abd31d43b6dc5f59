"""Exact computations for Loday-type algebras viewed as multiplications on
non-symmetric operads: cohomology, deformations, obstructions, abelian
extensions, morphism deformations and twisted (BiHom) variants."""

from .algebra import AlgebraSpec, MorphismSpec, RepresentationSpec, RotaBaxterSpec, validate_algebra
from .operad import Element, Operad, OperadComplex
from .shapes import FAMILIES, enumerate_shapes

__all__ = ["AlgebraSpec", "MorphismSpec", "RepresentationSpec", "RotaBaxterSpec", "validate_algebra",
           "Element", "Operad", "OperadComplex", "FAMILIES", "enumerate_shapes"]
