"""Exception hierarchy shared by the whole package."""


class TubularError(Exception):
    """Base class for all errors raised by this package."""


class IncompatibleOperands(TubularError):
    """Operands live over different charts or different ground fields."""


class NotAUnit(TubularError):
    """An inverse was requested for an element that is not a unit of its ring."""


class NotInvertible(TubularError):
    """A matrix inverse was requested but the determinant is not a ring unit."""


class TruncationLoss(TubularError):
    """A value does not fit inside the requested box and clipping was not allowed."""


class InsufficientPrecision(TubularError):
    """The working t-adic precision is too low to certify the requested computation."""


class Unsupported(TubularError):
    """The requested operation is outside the implemented cases."""


class IllegalArrow(TubularError):
    """No canonical ring homomorphism exists between the given ring tags."""


class FlagViolation(TubularError):
    """A variable was inverted (or mapped to an inverted monomial) without being
    flagged invertible in the relevant chart."""


class NotInW(TubularError):
    """A point-level operation required a point of the punctured tube W."""


class ParseError(TubularError):
    """Syntax or semantic error in textual input; carries a position."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = "%s (at position %d)" % (message, pos)
        super().__init__(message)


class SceneError(TubularError):
    """Invalid scene description (bad references, illegal substitutions, ...)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "%s (scene line %d)" % (message, line)
        super().__init__(message)
