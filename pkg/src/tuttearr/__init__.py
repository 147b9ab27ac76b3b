"""Tutte and coboundary polynomials of integer hyperplane arrangements."""

from .algebra import (
    Poly,
    characteristic_from_coboundary,
    coboundary_from_tutte,
    interpolate,
    region_counts,
    tutte_from_coboundary,
)
from .core import Arrangement, Hyperplane, arrangement_rank, contract, delete, is_central, rank
from .families import SimpleGraph, graphical, make, slope_deformation
from .finite_field import FieldConfig, coboundary_via_finite_field
from .pipeline import characteristic, coboundary, point_polynomial, tutte

__all__ = [
    "Arrangement",
    "FieldConfig",
    "SimpleGraph",
    "characteristic",
    "coboundary",
    "coboundary_via_finite_field",
    "graphical",
    "make",
    "point_polynomial",
    "slope_deformation",
    "tutte",
    "Hyperplane",
    "Poly",
    "arrangement_rank",
    "characteristic_from_coboundary",
    "coboundary_from_tutte",
    "contract",
    "delete",
    "interpolate",
    "is_central",
    "rank",
    "region_counts",
    "tutte_from_coboundary",
]
