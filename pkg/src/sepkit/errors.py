"""Exception types shared across the package."""


class SepkitError(Exception):
    """Base class for all errors raised by sepkit."""


class InvalidInputError(SepkitError, ValueError):
    """Bad argument or an input violating a documented invariant."""


class SizeLimitError(InvalidInputError):
    """Operator would exceed the configured maximum dimension."""


class BudgetError(InvalidInputError):
    """Permutation count exceeds the sweep budget; pass force=True to lift."""


class NotPSDError(InvalidInputError):
    """Operator expected to be positive semidefinite is not (within tolerance)."""


class NumericalError(SepkitError):
    """A numerical routine failed (SVD non-convergence, residual check failure)."""


class ConstructionError(SepkitError):
    """Witness-to-map compilation failed; the witness is not usable."""
