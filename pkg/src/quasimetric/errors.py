"""Exception hierarchy.

Every domain failure derives from :class:`QuasiMetricError` so that callers
(and the command line front end) can separate them from programming errors.
"""


class QuasiMetricError(ValueError):
    """Base class for validation and precondition failures."""


class ValidationError(QuasiMetricError):
    """A distance matrix violates one of the quasi-metric axioms."""


class NonSquare(ValidationError):
    def __init__(self, shape):
        self.shape = shape
        super().__init__(f"matrix is not square: shape {shape}")


class NonzeroDiagonal(ValidationError):
    def __init__(self, i):
        self.i = i
        super().__init__(f"axiom (1) violated: rho[{i}][{i}] != 0")


class NegativeEntry(ValidationError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"axiom (1) violated: rho[{i}][{j}] < 0")


class ZeroOffDiagonal(ValidationError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"axiom (1) violated: rho[{i}][{j}] = 0 for distinct points")


class AsymmetricEntry(ValidationError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"axiom (2) violated: rho[{i}][{j}] != rho[{j}][{i}]")


class NonIntegerExponentInExactMode(QuasiMetricError):
    def __init__(self, p):
        self.p = p
        super().__init__(f"exponent {p} must be a positive integer in exact mode")


class EnumerationBudgetExceeded(QuasiMetricError):
    pass


class ChainTooShort(QuasiMetricError):
    pass


class EndpointHasNoNeighbors(QuasiMetricError):
    pass


class PrecondViolation(QuasiMetricError):
    pass


class SamePoint(QuasiMetricError):
    pass


class NonpositiveIndex(QuasiMetricError):
    pass


class DepthBudgetExceeded(QuasiMetricError):
    pass


class BadSpec(QuasiMetricError):
    pass


class ConstructionError(RuntimeError):
    """Raised when an internal invariant of the dyadic construction breaks.

    These indicate a bug, never bad user input.
    """


class NoIntersection(ConstructionError):
    pass


class MultipleIntersections(ConstructionError):
    pass
