"""Finite cube complexes: data model, metric tools, hyperplanes and isomorphism."""
from .carrier import CarrierProduct, carrier, carrier_product, is_carrier_retract
from .core import ComplexError, Cube, CubeComplex, Hyperplane, boundary_walk, square
from .cover import CoverBall, cover_ball
from .io import SchemaError, dumps, from_dict, loads, to_dict, to_dot
from .iso import Isomorphism, is_isomorphic, verify_isomorphism
from .metric import (NotConnected, NotFull, cat0_failures, diameter, distance, distance_matrix,
                     geodesic, halfspaces, helly_check, is_cat0, is_convex, is_median_graph,
                     median, median_table, separator)
from .special import SpecialReport, is_special
from .subcomplex import SubcomplexRef, faces
from .subdivide import Subdivision, subdivide


def hyperplanes(X: CubeComplex) -> list[Hyperplane]:
    return list(X.hyperplanes)


__all__ = [
    "CarrierProduct", "ComplexError", "CoverBall", "Cube", "CubeComplex", "Hyperplane",
    "Isomorphism", "NotConnected", "NotFull", "SchemaError", "SpecialReport", "Subdivision",
    "SubcomplexRef", "boundary_walk", "carrier", "carrier_product", "cat0_failures",
    "cover_ball", "diameter", "distance", "distance_matrix", "dumps", "faces", "from_dict",
    "geodesic", "halfspaces", "helly_check", "hyperplanes", "is_carrier_retract", "is_cat0",
    "is_convex", "is_isomorphic", "is_median_graph", "is_special", "loads", "median",
    "median_table", "separator", "square", "subdivide", "to_dict", "to_dot",
    "verify_isomorphism",
]
