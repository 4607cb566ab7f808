"""Exception and warning types raised across the package."""


class InvalidDimension(ValueError):
    """Truncation dimension too small for the requested construction."""


class InvalidWeights(ValueError):
    """Mixture weights are negative or sum to more than one."""


class PreconditionViolated(ValueError):
    """A hypothesis required for a closed form does not hold."""


class DivergentMoment(ArithmeticError):
    """The series sum_n n^k w_n diverges for the requested moment order.

    In that case the square-integrability domain of the k-th moment is {0}.
    """

    def __init__(self, weights, k):
        self.weights = weights
        self.k = k
        super().__init__(
            f"sum_n n^{k} w_n diverges for {weights!r}: the square-integrability "
            f"domain of the order-{k} moment is {{0}}"
        )


class NormalizationWarning(UserWarning):
    """State vector is not normalized."""


class LeakageWarning(UserWarning):
    """Grid is too narrow: probability mass outside the grid exceeds 1e-4."""
