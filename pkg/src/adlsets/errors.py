"""Exception types shared across the package."""


class RootDatumError(ValueError):
    """Unknown Cartan type, bad rank or bad index set."""


class NotAnAutomorphism(ValueError):
    """The proposed permutation does not preserve the Cartan matrix."""


class LeviNotSigmaStable(ValueError):
    pass


class LeviMismatch(ValueError):
    pass


class NotDominant(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its size budget.

    ``predicted`` carries the size that triggered the refusal and
    ``partial`` whatever partial result the caller may want to report.
    """

    def __init__(self, message: str, predicted: int | None = None, partial=None):
        super().__init__(message)
        self.predicted = predicted
        self.partial = partial


class HypothesisViolated(ValueError):
    """A theorem was invoked outside its hypotheses."""


class PrecisionExhausted(ArithmeticError):
    """A valuation could not be certified at the working precision."""


class NotAdjacent(ValueError):
    pass
