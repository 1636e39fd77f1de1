"""
Exceptions raised by isotropy.

Bad input is reported with ValueError subclasses; broken internal invariants with RuntimeError subclasses.
A mathematical counterexample found by a theorem checker is never an exception: it is recorded in a
VerificationResult (see verify.py).
"""


class ConstructionError(ValueError):
    """Invalid root-system type/rank, unknown index name or malformed ring spec."""


class ParameterError(ValueError):
    """A classical-family constraint or a run parameter is violated."""


class PreconditionError(ValueError):
    """An operation was called outside its hypotheses."""


class UnsupportedError(ValueError):
    """The instance has no matrix model or lies outside the theorem's hypotheses."""


class RingError(ValueError):
    """Arithmetic error over a finite ring."""


class WiringError(RuntimeError):
    """Internal consistency failure: indicates invalid stored data or a programming error."""


class CapExceededError(RuntimeError):
    """An enumeration would exceed the configured element cap."""


class SearchBudgetError(RuntimeError):
    """A backtracking search ran out of its node budget."""
