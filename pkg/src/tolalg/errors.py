"""Exception hierarchy shared by all modules."""


class ToleranceAlgebraError(Exception):
    """Base class for every error raised by :mod:`tolalg`."""


# input errors (CLI exit code 2)


class InputError(ToleranceAlgebraError, ValueError):
    pass


class ParseError(InputError):
    pass


class RangeError(InputError):
    pass


class LoopError(InputError):
    pass


class CoverError(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class RelationMismatch(InputError):
    pass


class ZeroVector(InputError):
    pass


class NotUnit(InputError):
    pass


class NotDensity(InputError):
    pass


class NotHermitian(InputError):
    pass


# invariant violations (CLI exit code 3)


class InvariantViolation(ToleranceAlgebraError, ValueError):
    pass


class MagmaAxiomError(InvariantViolation):
    pass


class SupportViolation(InvariantViolation):
    pass


class PreconditionViolation(InvariantViolation):
    pass


class NotTolerant(InvariantViolation):
    pass


class NoDominantVertex(InvariantViolation):
    pass


class NotWeaklyPositive(InvariantViolation):
    pass


class NotPovm(InvariantViolation):
    pass


class Undecided(ToleranceAlgebraError):
    """The numerical fallback could neither certify nor refute weak positivity."""

    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual
