"""Exception types shared across the package.

The CLI maps these onto exit codes: precondition-style failures exit 2,
unavailable strategies / exhausted budgets exit 3.
"""


class TropmatroidError(Exception):
    """Base class for all package errors."""


class PreconditionViolated(TropmatroidError):
    """An operation was called outside its stated domain."""


class MixedFields(PreconditionViolated):
    """Vectors or series over different fields were combined."""


class DimensionMismatch(PreconditionViolated):
    """Vector length does not match the ambient dimension."""


class CountExceedsField(PreconditionViolated):
    """Asked to enumerate more distinct elements than a prime field has."""


class EmptySet(PreconditionViolated):
    """A nonempty index set was required."""


class WindowMismatch(PreconditionViolated):
    """Support or series data does not fit the target ground window."""


class GroundTooLarge(PreconditionViolated):
    """Exhaustive verification was requested on a ground set above the cap."""


class RankCollapse(PreconditionViolated):
    """Truncation destroyed the linear independence of the generators."""


class CharNotZero(PreconditionViolated):
    """A derivation was applied over a field of positive characteristic."""


class PrecisionExhausted(PreconditionViolated):
    """A result was requested beyond the trusted coefficient range."""


class BothZero(PreconditionViolated):
    """The coefficient pair (0, 0) names no series."""


class UnsupportedArity(PreconditionViolated):
    """Newton-polyhedron vertices are only computed for m <= 2."""


class StrategyUnavailable(TropmatroidError):
    """The requested strategy's preconditions do not hold for this instance."""


class BudgetExceeded(TropmatroidError):
    """Brute-force enumeration would exceed the configured budget."""


class MalformedInstance(TropmatroidError):
    """An instance file failed schema validation or parsing."""
