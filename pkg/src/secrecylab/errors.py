"""Exception types shared across the package.

All validation failures derive from :class:`ValueError` so callers that do
not care about the fine-grained category can catch the builtin.
"""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition (sign, range, shape)."""


class UnsupportedSizeError(ValueError):
    """The instance is larger than the exhaustive/desk-scale limit."""


class InvalidPairError(ValueError):
    """A cooperating pair violates the jamming-margin ordering."""


class UsageError(ValueError):
    """A required option is missing or an option combination is invalid."""


class ScenarioError(ValueError):
    """A scenario file could not be used. Base class for load failures."""


class ScenarioSyntaxError(ScenarioError):
    """The scenario file is not well-formed (reported with line/column)."""


class ScenarioValidationError(ScenarioError):
    """The scenario parsed but violates the schema or a type invariant."""


class NumericalError(RuntimeError):
    """A solver failed to converge to its documented tolerance."""
