"""Exception hierarchy shared by every module."""


class RuptureOptError(Exception):
    """Base class for all errors raised by ruptureopt."""


class DimensionError(RuptureOptError):
    """A dimension is outside what the geometry kernels support."""


class BoundsError(RuptureOptError, ValueError):
    """Lower and upper bounds are inconsistent."""


class DegeneratePolytopeError(RuptureOptError):
    """The operation needs a full-dimensional polytope."""


class ConfigError(RuptureOptError, ValueError):
    """A configuration document or flag could not be interpreted."""


class BudgetExceededError(RuptureOptError):
    """An exhaustive enumeration would exceed the allowed count."""

    def __init__(self, count, budget):
        super().__init__(f"enumeration of {count} genomes exceeds budget {budget}")
        self.count = count
        self.budget = budget
