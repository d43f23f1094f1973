"""Exception types raised across the workbench."""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class DimensionMismatch(WorkbenchError):
    """Array shapes disagree (rows of A vs b, columns of A vs c, ...)."""


class RankDeficient(WorkbenchError):
    """A has rank strictly less than its row count."""


class DegenerateShape(WorkbenchError):
    """The program has no room for a nonbasis (n <= m)."""


class SingularBasis(WorkbenchError):
    """The chosen basis columns form a singular matrix."""


class IndexOutOfRange(WorkbenchError, IndexError):
    """A variable, row, or column index lies outside its valid range."""


class InvalidP(WorkbenchError):
    """Norm parameter is not a positive integer or infinity."""


class InfeasibleInitialBasis(WorkbenchError):
    """solve() was handed a basis whose basic values are not all nonnegative."""


class Infeasible(WorkbenchError):
    """The feasible region is empty (phase-one auxiliary optimum is positive)."""


class NoFeasibleBasis(WorkbenchError):
    """Exhaustive enumeration found no feasible basis."""


class BudgetExceeded(WorkbenchError):
    """C(n, m) exceeds the enumeration budget."""


class DegenerateInstance(WorkbenchError):
    """Analysis that requires nondegeneracy was asked about a degenerate instance."""


class NoImprovingNonbasis(WorkbenchError):
    """Every feasible basis is already optimal, so q is undefined."""


class UndefinedQ(WorkbenchError):
    """A bound that needs q was requested but q is unavailable."""


class MissingSecondBest(WorkbenchError):
    """Gap-ratio bounds need a second-smallest BFS objective and none exists."""


class TraceNotOptimal(WorkbenchError):
    """Trace verification requires a trace that terminated at an optimum."""


class CatalogMismatch(WorkbenchError):
    """A catalog or trace was paired with a different instance than it came from."""


class InvalidDimension(WorkbenchError):
    """Generator dimensions are out of range (need n > m >= 1, k >= 1, ...)."""


class InvalidTheta(WorkbenchError):
    """Discount factor must satisfy 0 <= theta < 1."""


class ResampleLimitExceeded(WorkbenchError):
    """Random generator failed to produce a valid instance within its retry budget."""


class ParseError(WorkbenchError):
    """Malformed instance, trace, config, or rule designator input."""
