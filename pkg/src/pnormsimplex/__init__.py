"""Exact-arithmetic simplex workbench with p-norm pricing.

Solves standard-form LPs min c.x s.t. Ax = b, x >= 0 over exact rationals,
with pluggable pivot rules (Dantzig, best improvement, p-norm steepest-edge
family), brute-force basis enumeration for ground truth, iteration-bound
evaluation, per-iteration trace verification, and generators for Klee-Minty
cubes, random nondegenerate LPs, and discounted MDPs.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    CatalogMismatch,
    DegenerateInstance,
    DegenerateShape,
    DimensionMismatch,
    IndexOutOfRange,
    Infeasible,
    InfeasibleInitialBasis,
    InvalidDimension,
    InvalidP,
    InvalidTheta,
    MissingSecondBest,
    NoFeasibleBasis,
    NoImprovingNonbasis,
    ParseError,
    RankDeficient,
    ResampleLimitExceeded,
    SingularBasis,
    TraceNotOptimal,
    UndefinedQ,
    WorkbenchError,
)
from .kernels import backend_name
from .lp import (
    Basis,
    BasicSolution,
    Dictionary,
    DualSolution,
    StandardFormLP,
    basic_solution,
    dictionary,
    dual_solution,
    format_rational,
    load_lp,
    lp_from_dict,
    lp_to_dict,
    parse_rational,
    save_lp,
    validate,
)
from .rules import (
    INFINITY,
    UNBOUNDED_RAY,
    ColumnNorm,
    PivotRule,
    RuleKind,
    column_pnorm,
    parse_rule,
    select_entering,
    v_column,
)
from .engine import (
    IterationRecord,
    Outcome,
    OutcomeKind,
    RatioStep,
    SolveTrace,
    default_max_iters,
    load_trace,
    phase_one,
    ratio_test,
    save_trace,
    solve,
    trace_from_dict,
    trace_to_dict,
)
from .analysis import (
    BfsCatalog,
    BoundInputs,
    BoundReport,
    CatalogEntry,
    CheckResult,
    QReport,
    QRow,
    VerificationReport,
    bounds_to_dict,
    catalog_to_dict,
    certified_ln_ceil,
    compute_q,
    enumerate_bfs,
    evaluate_bounds,
    qreport_to_dict,
    verification_to_dict,
    verify_trace,
)
from .generators import (
    DmdpInstance,
    GeneratedInstance,
    dmdp_bound,
    dmdp_generate,
    klee_minty,
    random_lp,
)

__all__ = [
    "__version__",
    # errors
    "BudgetExceeded",
    "CatalogMismatch",
    "DegenerateInstance",
    "DegenerateShape",
    "DimensionMismatch",
    "IndexOutOfRange",
    "Infeasible",
    "InfeasibleInitialBasis",
    "InvalidDimension",
    "InvalidP",
    "InvalidTheta",
    "MissingSecondBest",
    "NoFeasibleBasis",
    "NoImprovingNonbasis",
    "ParseError",
    "RankDeficient",
    "ResampleLimitExceeded",
    "SingularBasis",
    "TraceNotOptimal",
    "UndefinedQ",
    "WorkbenchError",
    # kernels
    "backend_name",
    # lp
    "Basis",
    "BasicSolution",
    "Dictionary",
    "DualSolution",
    "StandardFormLP",
    "basic_solution",
    "dictionary",
    "dual_solution",
    "format_rational",
    "load_lp",
    "lp_from_dict",
    "lp_to_dict",
    "parse_rational",
    "save_lp",
    "validate",
    # rules
    "INFINITY",
    "UNBOUNDED_RAY",
    "ColumnNorm",
    "PivotRule",
    "RuleKind",
    "column_pnorm",
    "parse_rule",
    "select_entering",
    "v_column",
    # engine
    "IterationRecord",
    "Outcome",
    "OutcomeKind",
    "RatioStep",
    "SolveTrace",
    "default_max_iters",
    "load_trace",
    "phase_one",
    "ratio_test",
    "save_trace",
    "solve",
    "trace_from_dict",
    "trace_to_dict",
    # analysis
    "BfsCatalog",
    "BoundInputs",
    "BoundReport",
    "CatalogEntry",
    "CheckResult",
    "QReport",
    "QRow",
    "VerificationReport",
    "bounds_to_dict",
    "catalog_to_dict",
    "certified_ln_ceil",
    "compute_q",
    "enumerate_bfs",
    "evaluate_bounds",
    "qreport_to_dict",
    "verification_to_dict",
    "verify_trace",
    # generators
    "DmdpInstance",
    "GeneratedInstance",
    "dmdp_bound",
    "dmdp_generate",
    "klee_minty",
    "random_lp",
]
