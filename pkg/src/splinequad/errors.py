"""Exception taxonomy shared by all splinequad modules.

Two broad classes matter to callers:

* validation errors (:class:`InvalidPartition`, :class:`UnsupportedConfiguration`)
  mean the *request* is malformed -- nothing was computed.
* :class:`NumericFailure` and its subclasses mean the request was well-formed
  but the construction broke down numerically (a root left the reference
  interval, a discriminant went negative, ...).  For non-uniform partitions
  some rule families genuinely do not exist, so these are expected outcomes,
  not bugs.

The CLI maps validation errors to exit status 2 and numeric failures to 3.
"""


class QuadratureError(Exception):
    """Base class for every error raised by this package.

    ``subinterval`` (1-based) is attached by the engine when a failure can be
    blamed on a specific subinterval of the partition.
    """

    def __init__(self, message, *, subinterval=None):
        self.subinterval = subinterval
        if subinterval is not None:
            message = f"subinterval {subinterval}: {message}"
        super().__init__(message)


class InvalidPartition(QuadratureError):
    """The partition is malformed (non-positive length, wrong sum, ...)."""


class UnsupportedConfiguration(QuadratureError):
    """The request asks for a combination the construction cannot tile
    (e.g. a half rule with an even middle index, or a free parameter on a
    family that has none)."""


class NumericFailure(QuadratureError):
    """Base class for runtime numeric breakdowns."""


class RootCountMismatch(NumericFailure):
    """A polynomial did not have the expected number of real roots inside the
    reference bracket.  Signals an invalid parameter state, e.g. the wrong
    branch of a pair-matching quadratic."""


class ConvergenceFailure(NumericFailure):
    """Newton polishing of a root stalled."""


class NegativeDiscriminant(NumericFailure):
    """A pair-matching quadratic has no real solution for this state."""


class DegenerateDenominator(NumericFailure):
    """A closed-form denominator vanished (node at an interval endpoint,
    degenerate recursion state, ...).  No limit value is guessed."""


class RuleNotAvailable(NumericFailure):
    """No admissible rule exists for the request: every attempted branch /
    free-parameter value produced an out-of-range root.  Existence boundaries
    are a real feature of these families on rough partitions."""


class TargetUnreachable(NumericFailure):
    """Free-parameter pinning could not place a node at the requested
    position within the scanned parameter range."""


class NoConvergence(NumericFailure):
    """A fixed-point iteration exhausted its iteration budget.  Carries the
    last iterate so callers can report a best-effort result."""

    def __init__(self, message, *, params=None, iterations=None, residual=None):
        super().__init__(message)
        self.params = params
        self.iterations = iterations
        self.residual = residual
