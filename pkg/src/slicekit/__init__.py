"""slicekit: exact analysis of slices of base-n self-similar sets.

Given digit sets A_i inside {0..n-1} and nonzero integer coefficients m_i,
the package studies how many ways a real x can be written as
sum_i m_i y_i with each y_i in the self-similar set built from A_i, and the
Hausdorff dimension / measure of the sets of x with a prescribed number of
representations.  All geometry is exact rational arithmetic; spectral radii
and dimension values are certified enclosures.
"""

__version__ = "0.1.0"

from .analysis import (
    RSearchResult,
    U1Report,
    UrReport,
    WitnessExpansion,
    dim_u1,
    dim_ur,
    domination_check,
    enumerate_achievable_r,
    measure_u1,
    measure_ur,
    witness_ur,
)
from .counting import (
    CardResult,
    NadicExpansion,
    SliceState,
    cube_count_vector,
    exact_card,
    expansion_value,
    lyapunov_estimate,
    nadic_expansion,
)
from .graphs import (
    CongruentGraph,
    CongruentSubset,
    FullGraph,
    SccDecomposition,
    XiGraph,
    build_congruent_graph,
    build_full_graph,
    build_xi_graph,
    congruent_vertices,
    psi_step,
    scc,
)
from .instance import ProblemInstance, derived_bounds, parse_instance, serialize
from .lattice import (
    IntegerInterval,
    SmallCube,
    TypeAssignment,
    WorkingInterval,
    covering_condition,
    enumerate_integer_intervals,
    strong_separation,
    type_assignment,
    xi_set,
)
from .oracle import CubeChain, brute_force_cube_count, brute_force_solutions
from .spectral import (
    CountMatrix,
    RadiusResult,
    char_poly,
    irreducible,
    radii_equal,
    spectral_radius,
    transition_matrices,
)

__all__ = [
    "ProblemInstance",
    "parse_instance",
    "serialize",
    "derived_bounds",
    "IntegerInterval",
    "WorkingInterval",
    "SmallCube",
    "TypeAssignment",
    "enumerate_integer_intervals",
    "covering_condition",
    "strong_separation",
    "type_assignment",
    "xi_set",
    "FullGraph",
    "XiGraph",
    "CongruentSubset",
    "CongruentGraph",
    "SccDecomposition",
    "build_full_graph",
    "build_xi_graph",
    "congruent_vertices",
    "build_congruent_graph",
    "scc",
    "psi_step",
    "CountMatrix",
    "RadiusResult",
    "transition_matrices",
    "spectral_radius",
    "irreducible",
    "radii_equal",
    "char_poly",
    "NadicExpansion",
    "SliceState",
    "CardResult",
    "nadic_expansion",
    "cube_count_vector",
    "exact_card",
    "expansion_value",
    "lyapunov_estimate",
    "U1Report",
    "RSearchResult",
    "UrReport",
    "WitnessExpansion",
    "dim_u1",
    "measure_u1",
    "enumerate_achievable_r",
    "dim_ur",
    "domination_check",
    "measure_ur",
    "witness_ur",
    "CubeChain",
    "brute_force_cube_count",
    "brute_force_solutions",
]
