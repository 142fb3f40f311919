"""Exception types shared across the package."""


class SizeMismatchError(ValueError):
    """Operands live over a different number of endpoints."""


class CapacityError(ValueError):
    """Requested size exceeds the supported desk-scale range."""


class InvariantError(RuntimeError):
    """A structural fact that should be impossible to violate was violated.

    Raised, for example, if the arrow digraph on matchings acquires a cycle
    or a surgery fails to split a circle.  Any occurrence is a bug, never a
    user error.
    """


class TorsionError(RuntimeError):
    """An integer quotient that must be free had nontrivial torsion."""
