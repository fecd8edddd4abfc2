"""Left-invariant Hermitian structures on Lie algebras with two-dimensional
derived algebra: decomposition, connections, curvature and classification."""

from .errors import Lie2Error
from .lie2 import MetricLieAlgebra, Lie2Decomposition, decompose, decompose_extended, assemble, validate
from .hermitian import AlmostComplexStructure, classify, classify_J_type

__all__ = [
    "Lie2Error",
    "MetricLieAlgebra",
    "Lie2Decomposition",
    "decompose",
    "decompose_extended",
    "assemble",
    "validate",
    "AlmostComplexStructure",
    "classify",
    "classify_J_type",
]
