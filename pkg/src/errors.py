"""Exception hierarchy shared by the geometry kernel, the toric dictionary and the lab.

The CLI maps these onto exit codes:
    InputFormatError -> 2, GeometryError -> 3, everything else LabError -> 1.
"""


class LabError(Exception):
    """Base class for every error raised by this package."""


class InputFormatError(LabError, ValueError):
    """Malformed JSON, rational strings or flag values."""


class GeometryError(LabError, ValueError):
    """The requested geometry is infeasible or inconsistent."""


class EmptyInputError(GeometryError):
    pass


class DimensionMismatchError(GeometryError):
    pass


class EmptyRegionError(GeometryError):
    """A halfspace system has no solution."""


class UnboundedRegionError(GeometryError):
    """A halfspace system is feasible but not bounded."""


class NonPrimitiveVectorError(GeometryError):
    pass


class NegativeScaleError(GeometryError):
    pass


class DegenerateBodyError(GeometryError):
    """A body (or Minkowski sum) is lower-dimensional where full dimension is needed.

    `direction` is a primitive integer vector orthogonal to the affine hull,
    when one is available.
    """

    def __init__(self, message, direction=None):
        super().__init__(message)
        self.direction = direction


class ContainmentError(GeometryError):
    pass


class OutOfRangeError(GeometryError):
    pass


class IndexOutOfRangeError(GeometryError, IndexError):
    pass


class NonConcaveProfileError(GeometryError):
    pass


class InstanceError(LabError):
    """The generator cannot satisfy an InstanceSpec."""


class OracleError(LabError, RuntimeError):
    """An independent oracle failed in a way that signals a bug."""
