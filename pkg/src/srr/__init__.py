"""Exact service rate regions of linear codes over prime fields.

Computes, bounds, and verifies the set of simultaneously servable download
demand vectors of a coded storage system: finite-field linear algebra,
projective multiset geometry, recovery-set enumeration, exact rational
linear programming, polytope conversion with an independent projection
oracle, and closed-form regions for binary simplex and first-order
Reed-Muller codes.
"""

from .bounds import (
    ValidInequality,
    all_hyperplane_cuts,
    axis_limits,
    hyperplane_capacity,
    hyperplane_cut,
    min_distance_lower_bound,
    uniform_axis_rate,
)
from .codes import (
    BINARY_SIMPLEX,
    FAMILIES,
    RM_NONSYSTEMATIC,
    RM_SYSTEMATIC,
    achievability_schedule,
    family_generator,
    known_region,
    rm_generator,
    simplex_generator,
)
from .errors import (
    DimensionMismatch,
    EmptyIndexSet,
    MalformedLP,
    NonUnitRates,
    NotATheoremVertex,
    OracleTooLarge,
    RankDeficient,
    UnsupportedK,
    ZeroColumn,
    ZeroVector,
)
from .fields import (
    GF2,
    FieldMatrix,
    FieldOrder,
    FieldVector,
    enumerate_vectors,
    field_arith,
    matrix_from_columns,
    row_reduce,
    solve_linear,
    unit_vector,
    vector_rank,
)
from .formats import (
    ParseError,
    parse_matrix,
    parse_polytope,
    parse_rational,
    serialize_matrix,
    serialize_polytope,
)
from .geometry import (
    Hyperplane,
    PointMultiset,
    ProjectivePoint,
    codeword_weight,
    enumerate_hyperplanes,
    enumerate_points,
    gaussian_binomial,
    induced_multiset,
    min_distance_geometric,
    restricted_cardinality,
)
from .lp import (
    LinearProgram,
    LPSolution,
    build_dual,
    build_primal,
    check_duality,
    solve_lp,
)
from .polytope import (
    Polytope,
    hull_to_hrep,
    normalize_facet,
    polytope_contains,
    polytope_equal,
    polytope_from_hrep,
    remove_redundant_facets,
    vertices_from_facets,
)
from .recovery import (
    RecoveryCatalog,
    RecoverySet,
    build_catalog,
    enumerate_recovery_sets,
    validate_recovery_set,
)
from .region import (
    Allocation,
    allocation_is_valid,
    axis_maxima,
    compute_region,
    fm_projection_oracle,
    membership,
)

__version__ = "0.1.0"
