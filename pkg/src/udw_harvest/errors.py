"""Exception hierarchy shared by every numerical module."""


class UDWError(Exception):
    """Base class for all errors raised by udw_harvest."""


class NonPositiveParameter(UDWError, ValueError):
    pass


class RootNotBracketed(UDWError):
    pass


class DegeneratePole(UDWError):
    """A denominator zero is (numerically) a double root."""


class WindowOverlap(UDWError):
    pass


class BudgetExhausted(UDWError):
    pass


class CoincidentDetectors(UDWError, ValueError):
    pass


class AngularVelocityMismatch(UDWError, ValueError):
    pass


class NegativeProbability(UDWError):
    pass


class ExtrapolationUnstable(UDWError):
    pass


class NoTransitionInInterval(UDWError):
    pass


class ConfigError(UDWError, ValueError):
    pass
