"""Exception types raised by flavorent."""


class FlavorEntError(Exception):
    """Base class for all library errors."""


class NonHermitian(FlavorEntError, ValueError):
    pass


class NoConvergence(FlavorEntError, ArithmeticError):
    pass


class DimMismatch(FlavorEntError, ValueError):
    pass


class DimOverflow(FlavorEntError, ValueError):
    pass


class IndexOutOfRange(FlavorEntError, IndexError):
    pass


class NonUnitary(FlavorEntError, ValueError):
    pass


class NotNormalized(FlavorEntError, ValueError):
    pass


class NotDensityMatrix(FlavorEntError, ValueError):
    pass


class BadSplit(FlavorEntError, ValueError):
    pass


class UnknownSplit(FlavorEntError, ValueError):
    pass


class UnitError(FlavorEntError, ValueError):
    pass


class BracketInvalid(FlavorEntError, ValueError):
    pass


class BadSpec(FlavorEntError, ValueError):
    pass
