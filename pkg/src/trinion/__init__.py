"""SU(2) representations of the trinion and their moment tetrahedron.

Three conjugacy classes C(t1), C(t2), C(t3) of SU(2) admit matrices
A1 A2 A3 = 1 exactly when (t1, t2, t3) lies in the tetrahedron with
vertices (0,0,0), (pi,pi,0), (0,pi,pi), (pi,0,pi).  This package decides
that question, builds explicit witnesses, and cross-checks both against
brute-force oracles.
"""

from trinion.su2 import (
    AngleTriple,
    DomainError,
    ProductError,
    Representation,
    Su2Element,
    canonical_rep,
    class_angle,
    conjugate_by,
    conjugator_between,
    haar_sample,
    inverse,
    moment_map,
    multiply,
)
from trinion.polytope import (
    LATTICE,
    TETRAHEDRON,
    Lattice,
    Region,
    Tetrahedron,
    character_coordinate,
    classify,
    contains,
    lattice_contains,
    lattice_reduce,
    mc_volume_fraction,
    normalized,
)
from trinion.solver import (
    BetaSolution,
    Infeasible,
    Witness,
    beta_from_angles,
    holonomy_condition,
    solve_witness,
)

__all__ = [
    "AngleTriple",
    "BetaSolution",
    "DomainError",
    "Infeasible",
    "LATTICE",
    "Lattice",
    "ProductError",
    "Region",
    "Representation",
    "Su2Element",
    "TETRAHEDRON",
    "Tetrahedron",
    "Witness",
    "beta_from_angles",
    "canonical_rep",
    "character_coordinate",
    "class_angle",
    "classify",
    "conjugate_by",
    "conjugator_between",
    "contains",
    "haar_sample",
    "holonomy_condition",
    "inverse",
    "lattice_contains",
    "lattice_reduce",
    "mc_volume_fraction",
    "moment_map",
    "multiply",
    "normalized",
    "solve_witness",
]
