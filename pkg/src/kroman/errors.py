"""Exception hierarchy shared by the library and the CLI."""


class KRomanError(Exception):
    """Base class for all errors raised by this package."""


class InputError(KRomanError, ValueError):
    """Malformed input: out-of-range vertex, bad labeling entry, bad parameters."""


class ApplicabilityError(KRomanError, ValueError):
    """Parameters fall outside the range a bound or construction applies to."""


class ConstructionError(KRomanError):
    """A construction produced a labeling that is not a [k]-RDF.

    The offending violations (or the negative entries) are kept on the
    exception so callers can inspect the deficit pattern.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class CapacityError(KRomanError):
    """An exact solver refused to run because the search would be too large."""

    def __init__(self, message, estimate=None, budget=None):
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget
