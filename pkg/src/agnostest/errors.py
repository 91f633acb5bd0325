"""Exception types shared across the package."""


class InvalidBudgetError(ValueError):
    """The (alpha, beta) pair is outside the regime a construction requires."""


class DegenerateSampleError(ValueError):
    """A sample or fit carries no usable variation (zero variance)."""


class SingularDesignError(ValueError):
    """A design or contrast matrix is rank deficient."""
