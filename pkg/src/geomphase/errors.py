"""Exception hierarchy. Every failure mode carries a stable category name so the
CLI and service can report it without string-matching messages."""


class GeomphaseError(Exception):
    """Base for all categorized failures raised by this package."""

    category = "Error"


class DimensionMismatchError(GeomphaseError):
    category = "DimensionMismatch"


class NonFiniteStateError(GeomphaseError):
    category = "NonFiniteState"


class OrthogonalStatesError(GeomphaseError):
    category = "OrthogonalStates"


class IdenticalRaysError(GeomphaseError):
    category = "IdenticalRays"


class NotCyclicError(GeomphaseError):
    category = "NotCyclic"


class EndpointsNotOnSameRayError(GeomphaseError):
    category = "EndpointsNotOnSameRay"


class OrthogonalTriangleVerticesError(GeomphaseError):
    category = "OrthogonalTriangleVertices"


class BoundaryMismatchError(GeomphaseError):
    category = "BoundaryMismatch"


class ConfigError(GeomphaseError):
    category = "ConfigError"
