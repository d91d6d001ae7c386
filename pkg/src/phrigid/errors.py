"""Exception types raised across the package."""


class PhrigidError(Exception):
    """Base class for every domain error."""


class CapExceeded(PhrigidError):
    pass


class NonFinite(PhrigidError):
    pass


class SingularCayley(PhrigidError):
    pass


class MissingPlacement(PhrigidError):
    pass


class OffSphere(PhrigidError):
    pass


class NonUnitNormal(PhrigidError):
    pass


class NonConcurrent(PhrigidError):
    pass


class SliderOffLine(PhrigidError):
    pass


class NotTangent(PhrigidError):
    pass


class NotOrthogonal(PhrigidError):
    pass


class EquatorHit(PhrigidError):
    pass


class NotAMotion(PhrigidError):
    pass


class NotBipartite(PhrigidError):
    pass


class DuplicateNormals(PhrigidError):
    pass


class MissingLoopVector(PhrigidError):
    pass


class NoTransversalHyperplane(PhrigidError):
    pass


class CountsFail(PhrigidError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class RetryBudgetExhausted(PhrigidError):
    pass


class NotATree(PhrigidError):
    pass


class OverlappingClasses(PhrigidError):
    pass


class UnsupportedCase(PhrigidError):
    pass


class InvalidGraph(PhrigidError):
    pass


class SchemaError(PhrigidError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class IncidenceError(PhrigidError):
    pass
