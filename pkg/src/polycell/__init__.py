"""Cell data and reduced-word automata for hyperbolic polygon Coxeter groups."""

__version__ = "0.1.0"

from .presentation import (
    INFINITY,
    CoxeterPresentation,
    load_presentation,
    presentation_from_angles,
)
from .words import Element, ElementBall, PolygonGroup

__all__ = [
    "INFINITY",
    "CoxeterPresentation",
    "Element",
    "ElementBall",
    "PolygonGroup",
    "load_presentation",
    "presentation_from_angles",
    "__version__",
]
