"""Exception hierarchy.

Every class name doubles as the machine-readable error tag printed by the
command-line front end (exit code 1), so names are stable API.
"""


class SphBaryError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def name(self) -> str:
        return type(self).__name__


# -- vector / polygon validation ------------------------------------------

class ZeroVector(SphBaryError):
    pass


class TooFewVertices(SphBaryError):
    pass


class NotInHemisphere(SphBaryError):
    pass


class WrongOrientation(SphBaryError):
    pass


class DegenerateEdge(SphBaryError):
    pass


# -- polyhedron construction and 3D weights --------------------------------

class PointOnVertexOrAntipode(SphBaryError):
    pass


class NotInterior(SphBaryError):
    pass


class DegenerateTriangle(SphBaryError):
    pass


class KernelViolation(SphBaryError):
    pass


class NotConvex(SphBaryError):
    pass


class FaceThroughPoint(SphBaryError):
    pass


# -- spherical coordinate evaluation ----------------------------------------

class ExteriorPoint(SphBaryError):
    pass


class NonPositiveDenominator(SphBaryError):
    pass


class NotConvexForWC(SphBaryError):
    pass


class AngleDegenerate(SphBaryError):
    pass


class AlphaNearPi(SphBaryError):
    pass


# -- tangent-plane (classical) construction ---------------------------------

class ProjectionUndefined(SphBaryError):
    pass


class OriginOnBoundary(SphBaryError):
    pass


# -- harness -----------------------------------------------------------------

class SingularMatrix(SphBaryError):
    pass


class GenerationFailed(SphBaryError):
    pass


class ResidualTooLarge(SphBaryError):
    pass


class UnknownMethod(SphBaryError):
    pass
