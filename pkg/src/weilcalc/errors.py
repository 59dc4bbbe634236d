"""Exception hierarchy shared by all modules."""


class WeilError(Exception):
    """Base class for every error raised by :mod:`weilcalc`."""


class NonNilpotentVariable(WeilError, ValueError):
    pass


class ZeroDegreeGenerator(WeilError, ValueError):
    pass


class VariableCountMismatch(WeilError, ValueError):
    pass


class AlgebraMismatch(WeilError, ValueError):
    pass


class InvalidBlock(WeilError, ValueError):
    pass


class NotPointed(WeilError, ValueError):
    pass


class IllFormed(WeilError, ValueError):
    """A polynomial map does not send the target ideal into the source ideal."""

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class CompositionMismatch(WeilError, ValueError):
    pass


class UnknownName(WeilError, KeyError):
    pass


class BadParams(WeilError, ValueError):
    pass


class DimensionMismatch(WeilError, ValueError):
    pass


class BaseMismatch(WeilError, ValueError):
    pass


class NotFactorable(WeilError, ValueError):
    """An element does not lie in the image of an injective homomorphism."""
