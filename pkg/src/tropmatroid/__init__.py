"""Support matroids of truncated series spaces and tropical vanishing checks."""

from .counterexample import (
    NONE_IN_WINDOW,
    CounterexampleInstance,
    RationalEnumeration,
    build,
    full_verification,
    missing_indices_by_scan,
    support_gap,
    verify_solutions,
)
from .errors import (
    BothZero,
    BudgetExceeded,
    CharNotZero,
    CountExceedsField,
    DimensionMismatch,
    EmptySet,
    GroundTooLarge,
    MalformedInstance,
    MixedFields,
    PrecisionExhausted,
    PreconditionViolated,
    RankCollapse,
    StrategyUnavailable,
    TropmatroidError,
    UnsupportedArity,
    WindowMismatch,
)
from .fields import (
    QQ,
    PrimeField,
    Rationals,
    calkin_wilf,
    calkin_wilf_index,
    field_enumerate,
    field_from_json,
    rational_enumerate,
    rational_index,
)
from .linalg import Subspace, dot, extend_to_hyperplane, rank, solve_with_unit, span
from .matroid import (
    BRUTE_FORCE,
    PSI_TEST,
    GeneratorFamily,
    dual_check,
    verify_circuit_axioms,
    verify_scrawl_axioms,
)
from .reports import Check, Report
from .series import (
    DiffMonomial,
    DiffPolynomial,
    MultiSeries,
    linear_ode,
    merge_tuple_support,
    ode_solution_basis,
    solution_family,
)
from .tropical import (
    BooleanSeries,
    TropDiffPolynomial,
    VertexPoly,
    is_trop_solution,
    newton_vertices,
    semigroup_check,
    tropicalize,
    tropically_vanishes,
    vertex_sum,
)
from .windows import GroundWindow, SupportSet, single_block

__version__ = "0.1.0"
