"""Mirror-graph recognition with verifiable certificates.

Recognizes the graphs whose edge classes are each swapped by a reflection-like
automorphism, extracts the presentation matrix of the acting group, classifies
it against the finite catalog, and generates the matching Cayley and
chamber-adjacency graphs for cross-validation.
"""

from .convex import ConvexCycle, enumerate_convex_cycles, is_convex
from .coxeter import (
    CoxeterMatrix,
    CoxeterType,
    NotFiniteType,
    StructureError,
    check_order,
    classify,
    coxeter_matrix_from_type,
    extract_coxeter_matrix,
)
from .generate import (
    Arrangement,
    GroupBudgetExceeded,
    NotReflectionArrangement,
    UnknownName,
    generate_cayley,
    is_reflection_arrangement,
    named_example,
    reflection,
    standard_arrangement,
    tope_graph,
)
from .graphs import (
    Graph,
    ParseError,
    ValidationError,
    all_pairs_distances,
    build_graph,
    is_bipartite,
    load_graph,
    serialize_graph,
)
from .oracle import BudgetExceeded, all_automorphisms, are_isomorphic, brute_force_mirror
from .partial_cube import (
    NotPartialCube,
    ThetaEmbedding,
    antipode_map,
    embed,
    interval,
    is_harmonic_even,
    theta_classes,
)
from .recognition import (
    MirrorAutomorphism,
    MirrorCertificate,
    RejectReason,
    recognize,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "BudgetExceeded",
    "ConvexCycle",
    "CoxeterMatrix",
    "CoxeterType",
    "Graph",
    "GroupBudgetExceeded",
    "MirrorAutomorphism",
    "MirrorCertificate",
    "NotFiniteType",
    "NotPartialCube",
    "NotReflectionArrangement",
    "ParseError",
    "RejectReason",
    "StructureError",
    "ThetaEmbedding",
    "UnknownName",
    "ValidationError",
    "all_automorphisms",
    "all_pairs_distances",
    "antipode_map",
    "are_isomorphic",
    "brute_force_mirror",
    "build_graph",
    "check_order",
    "classify",
    "coxeter_matrix_from_type",
    "embed",
    "enumerate_convex_cycles",
    "extract_coxeter_matrix",
    "generate_cayley",
    "interval",
    "is_bipartite",
    "is_convex",
    "is_harmonic_even",
    "is_reflection_arrangement",
    "load_graph",
    "named_example",
    "recognize",
    "reflection",
    "serialize_graph",
    "standard_arrangement",
    "theta_classes",
    "tope_graph",
    "verify_certificate",
]
