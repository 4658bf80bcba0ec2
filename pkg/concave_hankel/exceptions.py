class HankelError(Exception):
    """Base class for every error raised by concave_hankel."""


class ImproperlyConfigured(HankelError):
    pass


class InvalidInput(HankelError, ValueError):
    pass


class DegenerateDenominator(InvalidInput):
    pass


class ZeroConstantTerm(InvalidInput):
    pass


class NonzeroConstantTerm(InvalidInput):
    pass


class DegenerateBoundary(InvalidInput):
    pass
