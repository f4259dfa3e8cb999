"""Exact computations on intersections of quadrics and moment-angle manifolds."""
__version__ = "0.1.0"

from .config import (Configuration, check_condition_K, check_weak_hyperbolicity,
                     derive, parse_configuration, read_configuration)
from .polytope import build_face_lattice, face_nonempty, verify_simple
from .homology import (GradedGroup, brute_force_homology, expression_homology,
                       homology_Z, relative_homology)

__all__ = [
    "Configuration", "parse_configuration", "read_configuration",
    "check_weak_hyperbolicity", "check_condition_K", "derive",
    "build_face_lattice", "face_nonempty", "verify_simple",
    "GradedGroup", "relative_homology", "homology_Z", "brute_force_homology",
    "expression_homology",
]
