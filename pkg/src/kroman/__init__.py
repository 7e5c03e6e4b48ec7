"""[k]-Roman domination on cylindrical and toroidal grids."""

from .errors import ApplicabilityError, CapacityError, ConstructionError, InputError, KRomanError
from .grid import Family, GridSpec, Vertex, closed_neighborhood, degree_bounds, fibre, neighbors
from .labeling import Labeling, Violation, active_neighborhood_size, level_sets, validate, weight

__version__ = "0.1.0"

__all__ = [
    "ApplicabilityError",
    "CapacityError",
    "ConstructionError",
    "Family",
    "GridSpec",
    "InputError",
    "KRomanError",
    "Labeling",
    "Vertex",
    "Violation",
    "active_neighborhood_size",
    "closed_neighborhood",
    "degree_bounds",
    "fibre",
    "level_sets",
    "neighbors",
    "validate",
    "weight",
]
