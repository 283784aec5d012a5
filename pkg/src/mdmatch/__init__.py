"""Rank invariants and matching distances for vector-valued filtrations."""
from .complex import (
    ComplexError,
    ScalarFiltration,
    SimplicialComplex,
    VectorFiltration,
    build_complex,
    lower_star,
    simplex_value,
    sublevel,
)
from .diagram import (
    INF,
    PersistenceDiagram,
    diagram_from_pairs,
    multiplicity_infinity,
    multiplicity_proper,
    rank_from_diagram,
)
from .foliation import (
    SUM_ONE,
    UNIT_NORM,
    AdmissiblePair,
    LeafCoordinates,
    Scheme,
    leaf_through,
    reduce_function,
    to_adm,
    unit_normalize,
    validate_scheme,
)
from .homology import FieldSpec, PersistencePairs, betti, persistence_pairs, rank_oracle
from .matching import brute_force_bottleneck, d_match, diagonal_cost, dtilde
from .multidist import GridSpec, dmatch_nd, invariance_report, leaf_distance

__version__ = "0.1.0"
