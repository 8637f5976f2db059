"""Exact combinatorics of Heegaard diagrams."""
from .diagram import (
    Arc,
    Curve,
    Diagram,
    DiagramError,
    Point,
    Region,
    Vertex,
    canonicalize,
    intersection_stats,
    parse_diagram,
    read_diagram,
    serialize,
    validate,
    write_diagram,
)
from .fixtures import fixture, fixture_names
from .moves import (
    Destabilize,
    EraseCurve,
    FingerMove,
    MoveError,
    SurgeFreeCurve,
    apply_move,
    random_diagram,
    standard_diagram,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "Curve",
    "Diagram",
    "DiagramError",
    "Point",
    "Region",
    "Vertex",
    "canonicalize",
    "intersection_stats",
    "parse_diagram",
    "read_diagram",
    "serialize",
    "validate",
    "write_diagram",
    "fixture",
    "fixture_names",
    "Destabilize",
    "EraseCurve",
    "FingerMove",
    "MoveError",
    "SurgeFreeCurve",
    "apply_move",
    "random_diagram",
    "standard_diagram",
]
