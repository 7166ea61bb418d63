"""Exception hierarchy shared by the geometry and kinematics modules."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DegenerateChordError(GeometryError):
    """A chord whose two endpoints coincide."""


class CausalityError(GeometryError):
    """A vector (pair) whose causal character rules out the requested angle."""


class NoIntersectionError(GeometryError):
    """A line that does not meet the curve (again) where it was expected to."""
