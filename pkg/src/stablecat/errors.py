"""Exception hierarchy shared by every stablecat module.

The CLI maps these onto exit codes: invariant/input failures exit 2,
precondition failures exit 3, internal inconsistencies exit 4.
"""


class StablecatError(Exception):
    """Base class for all stablecat errors."""


class InvariantError(StablecatError, ValueError):
    """A value violates one of its structural invariants."""


class DimensionError(StablecatError, ValueError):
    """Shapes, fields, algebras or sides do not match."""


class PreconditionError(StablecatError):
    """An operation was called outside its domain."""


class InconsistencyError(StablecatError):
    """Two independent computations disagree.  Always a bug signal."""
