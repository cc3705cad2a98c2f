"""Exception hierarchy shared by the library and the command line."""


class ArithKleinianError(ValueError):
    """Base class for domain errors raised by this package."""


class NotSquarefreeError(ArithKleinianError):
    pass


class ReducibleError(ArithKleinianError):
    pass


class UnsupportedFieldError(ArithKleinianError):
    pass


class UnsupportedPlaceError(ArithKleinianError):
    """A local Hilbert symbol cannot be decided by the implemented criteria."""

    def __init__(self, message, places=()):
        super().__init__(message)
        self.places = tuple(places)


class MixedAlgebraError(ArithKleinianError):
    pass


class SearchExhaustedError(ArithKleinianError):
    pass


class PrecisionError(ArithKleinianError):
    """Requested error bound not reachable within the configured term cap."""

    def __init__(self, message, achieved_bound=None, terms=None):
        super().__init__(message)
        self.achieved_bound = achieved_bound
        self.terms = terms


class NotArithmeticSetupError(ArithKleinianError):
    pass


class InvalidPointError(ArithKleinianError):
    pass


class SpecSyntaxError(ArithKleinianError):
    """Malformed field, element, point or matrix specification string."""
