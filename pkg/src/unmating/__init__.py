"""Combinatorial unmating of postcritically finite rational maps.

Given the level-1 complex f^-1(C) of a Thurston map, search for
connections of white 1-tiles whose outline is an orientation-preserving
deformation of C, and read off the critical portraits of the two
polynomials whose mating f is.
"""

from .complex import Skeleton, load_skeleton, parse_skeleton, validate
from .connection import Connection, Orientation, classify, load_connection, outline, search
from .lift2 import lift_degree2, load_mapping_portrait, obstruct
from .ncpart import complement, enumerate_cnc
from .portrait import Portrait, parse_portrait, validate_portrait
from .unmate import compose, substitution, unmate

__all__ = [
    "Connection", "Orientation", "Portrait", "Skeleton",
    "classify", "complement", "compose", "enumerate_cnc", "lift_degree2",
    "load_connection", "load_mapping_portrait", "load_skeleton", "obstruct",
    "outline", "parse_portrait", "parse_skeleton", "search", "substitution",
    "unmate", "validate", "validate_portrait",
]
