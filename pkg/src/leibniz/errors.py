"""Exception hierarchy shared by every module."""


class GeometryError(ValueError):
    """Base class for invalid or degenerate geometric input."""


class DimensionMismatch(GeometryError):
    pass


class DegenerateMedian(GeometryError):
    """A point coincides with the centroid of the remaining points."""


class NotOnSegment(GeometryError):
    pass


class NotCospherical(GeometryError):
    """Points do not lie on a common sphere within tolerance.

    ``sphere`` carries the best-fit sphere when one was computed.
    """

    def __init__(self, message, sphere=None):
        super().__init__(message)
        self.sphere = sphere


class DegenerateConfiguration(GeometryError):
    """The configuration leaves the requested quantity undetermined."""


class CoincidentPoints(GeometryError):
    pass


class InvalidSimplex(GeometryError):
    """Edge lengths that no Euclidean triangle or tetrahedron realizes."""
