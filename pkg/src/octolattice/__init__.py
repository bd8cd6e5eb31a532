"""Discrete octonionic function theory on the lattice hZ^8."""

from .algebra import (
    CLASSICAL,
    SPLIT,
    AlgebraKind,
    DomainError,
    OctonionValue,
    associator,
    index_sets,
    multiplication_table,
    multiply,
    validate_algebra,
)
from .lattice import BACKWARD, FORWARD, Box, GridSpec, LatticeField, Topology, random_field

__version__ = "0.1.0"

__all__ = [
    "AlgebraKind", "CLASSICAL", "SPLIT", "DomainError", "OctonionValue", "associator",
    "index_sets", "multiplication_table", "multiply", "validate_algebra",
    "BACKWARD", "FORWARD", "Box", "GridSpec", "LatticeField", "Topology", "random_field",
]
