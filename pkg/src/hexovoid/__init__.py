"""Finite generalized polygons, exact hitting set reductions, and the
distance-2 ovoid classification pipeline for dual split Cayley hexagons."""

__version__ = "0.1.0"

from .gf import FiniteField, eval_quadric, make_field
from .geometry import (
    Geometry,
    GPReport,
    ball,
    delta,
    dualize,
    load_geometry,
    point_dist,
    save_geometry,
    validate_gp,
)

__all__ = [
    "FiniteField",
    "make_field",
    "eval_quadric",
    "Geometry",
    "GPReport",
    "ball",
    "delta",
    "dualize",
    "point_dist",
    "load_geometry",
    "save_geometry",
    "validate_gp",
]
