"""Faces of directed edge polytopes of finite quivers."""

__version__ = "0.1.0"

from qface.errors import QFaceError
from qface.faces import (
    FaceLattice,
    FVector,
    enumerate_facets,
    f_vector,
    face_lattice,
    higashitani_check,
    is_face_ranked,
    is_facet,
    is_facet_symmetric,
)
from qface.families import closed_form_fvector, gen
from qface.geometry import affine_dim, dim_de, edge_vector, incidence_matrix
from qface.oracle import brute_force_lattice, is_face_oracle, verify
from qface.quiver import (
    EdgeSubset,
    Graph,
    Quiver,
    coconnectivity,
    components,
    contract,
    double,
    is_directed_acyclic,
    is_full,
    parse_quiver,
    spanning_polyforest,
)
from qface.rank import check_cycle_balance, find_rank_function

__all__ = [
    "EdgeSubset",
    "FVector",
    "FaceLattice",
    "Graph",
    "QFaceError",
    "Quiver",
    "affine_dim",
    "brute_force_lattice",
    "check_cycle_balance",
    "closed_form_fvector",
    "coconnectivity",
    "components",
    "contract",
    "dim_de",
    "double",
    "edge_vector",
    "enumerate_facets",
    "f_vector",
    "face_lattice",
    "find_rank_function",
    "gen",
    "higashitani_check",
    "incidence_matrix",
    "is_directed_acyclic",
    "is_face_oracle",
    "is_face_ranked",
    "is_facet",
    "is_facet_symmetric",
    "is_full",
    "parse_quiver",
    "spanning_polyforest",
    "verify",
]
