"""Exception types shared across the package."""


class NetworkSpectraError(Exception):
    """Base class for all errors raised by this package."""


class GraphValidationError(NetworkSpectraError):
    """A graph failed a structural check."""


class NonTorusEuler(GraphValidationError):
    pass


class NonContractibleFace(GraphValidationError):
    pass


class BadRotation(GraphValidationError):
    pass


class ZeroEvaluationPoint(NetworkSpectraError):
    pass


class ZeroPolynomial(NetworkSpectraError):
    pass


class MatrixTooLarge(NetworkSpectraError):
    pass


class SingleVertexGraph(NetworkSpectraError):
    pass


class TooManyEdges(NetworkSpectraError):
    pass


class TooLarge(NetworkSpectraError):
    pass


class NotAMatching(NetworkSpectraError):
    pass


class NonClosingBoundary(NetworkSpectraError):
    pass


class AmbiguousCone(NetworkSpectraError):
    pass


class FanAmbiguity(NetworkSpectraError):
    pass


class NotAPolygonVertex(NetworkSpectraError):
    pass


class StrandNotOnEdgeFamily(NetworkSpectraError):
    pass


class BadDegree(NetworkSpectraError):
    pass


class LoopAtVertex(NetworkSpectraError):
    pass


class SingularDenominator(NetworkSpectraError):
    pass


class NotATriangle(NetworkSpectraError):
    pass


class IsomorphismMismatch(NetworkSpectraError):
    pass


class PathDependence(NetworkSpectraError):
    pass


class DegenerateFiber(NetworkSpectraError):
    pass


class CorankTwo(NetworkSpectraError):
    pass


class WrongDivisorCount(NetworkSpectraError):
    pass


class NonHarnackInput(NetworkSpectraError):
    pass


class NoConvergence(NetworkSpectraError):
    pass
