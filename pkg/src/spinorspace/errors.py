"""Exception hierarchy shared by all modules."""


class SpinorSpaceError(Exception):
    """Base class for library errors."""


class ValidationError(SpinorSpaceError, ValueError):
    """Input violates a documented precondition."""


class SingularPointError(SpinorSpaceError, ArithmeticError):
    """Quantity is undefined at the requested point (axis, origin).

    Use :func:`spinorspace.calculus.singular_dir_deriv` for directional
    limits at such points.
    """


class SingularPathError(SingularPointError):
    """A path enters the tube around the x3 axis."""


class PathResolutionError(ValidationError):
    """Consecutive path samples are too far apart to lift the planar angle."""
