"""Exception hierarchy shared across the package."""


class OrbivarError(Exception):
    """Base class for all errors raised by orbivar."""


class IncompatibleModulusError(OrbivarError, ValueError):
    pass


class PolynomialSyntaxError(OrbivarError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotWeightedHomogeneousError(OrbivarError, ValueError):
    pass


class AmbiguousWeightsError(OrbivarError, ValueError):
    def __init__(self, message, free_coordinates=()):
        self.free_coordinates = tuple(free_coordinates)
        super().__init__(message)


class InvalidWeightError(OrbivarError, ValueError):
    pass


class NotSpecialLinearError(OrbivarError, ValueError):
    pass


class GroupTooLargeError(OrbivarError):
    pass


class InvarianceError(OrbivarError, ValueError):
    """The polynomial is not invariant, or invariance was not established."""


class TruncationError(OrbivarError, ArithmeticError):
    """A truncated series had a nonzero coefficient outside its certified support."""


class AveragingError(OrbivarError, ArithmeticError):
    """A group average failed to be rational (or integral where required)."""


class SignViolationError(OrbivarError, ValueError):
    pass


class ConsistencyError(OrbivarError, AssertionError):
    """Two independent computation routes disagreed."""


class CuspModelError(OrbivarError, ValueError):
    pass
