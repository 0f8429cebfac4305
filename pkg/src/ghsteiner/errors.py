"""Exception hierarchy. Every error the CLI maps to an exit code lives here."""


class GhSteinerError(Exception):
    """Base class for all library errors."""


class InvalidInput(GhSteinerError, ValueError):
    pass


class InvalidMetric(InvalidInput):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotSymmetric(InvalidMetric):
    pass


class NegativeOrZeroOffDiagonal(InvalidMetric):
    pass


class NonzeroDiagonal(InvalidMetric):
    pass


class TriangleViolation(InvalidMetric):
    pass


class TooFewPoints(InvalidInput):
    pass


class NonpositiveScale(InvalidInput):
    pass


class NotGeneric(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class EmptySet(InvalidInput):
    pass


class InvalidCorrespondence(InvalidInput):
    pass


class OutsideBall(InvalidInput):
    pass


class LimitExceeded(GhSteinerError):
    """Instance too large for an exact solver."""


class BudgetExceeded(LimitExceeded):
    def __init__(self, required, budget):
        super().__init__(
            f"exhaustive search needs {required} map pairs, budget is {budget}"
        )
        self.required = required
        self.budget = budget


class TooManyTerminals(LimitExceeded):
    pass


class TooManyPoints(LimitExceeded):
    pass


class GeneratorExhausted(GhSteinerError):
    pass


class LpNumericalFailure(GhSteinerError):
    pass


class VerificationFailed(GhSteinerError):
    """A theorem check produced a mismatch."""
