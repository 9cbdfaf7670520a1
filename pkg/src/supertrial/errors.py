"""Exception types shared across the package."""


class AlgebraError(Exception):
    """Base class for all domain errors raised by this package."""


class InputError(AlgebraError, ValueError):
    """Malformed, inconsistent, or out-of-range input data."""


class ModeError(InputError):
    """Operation requires the other structure-map mode (one twist map vs two)."""


class ParityError(InputError):
    """A grading constraint is violated."""


class SingularMapError(AlgebraError):
    """A map that must be invertible is singular."""


class CommutationError(AlgebraError):
    """An operator fails to commute with the structure maps."""


class NotAutomorphismError(AlgebraError):
    """The supplied map is not an automorphism of the algebra."""
