"""Exception types shared across the package."""


class EistrigError(Exception):
    """Base class for package-specific failures."""


class ConfigurationError(EistrigError, ValueError):
    """A precision context or run configuration is self-contradictory,
    e.g. a tolerance finer than the working precision minus the guard margin."""


class PoleProximityError(EistrigError, ValueError):
    """The evaluation point is within the pole guard distance of an integer,
    where 1/(z-n)^k overflows and every bound degenerates."""


class ToleranceUnreachableError(EistrigError, ArithmeticError):
    """The requested tolerance cannot be met: the truncation point would
    exceed the configured term cap, or cancellation exhausts the precision."""


class InconclusiveNonvanishingError(EistrigError, ArithmeticError):
    """|f(z)| did not exceed its own error radius, so dividing by f or
    claiming f(z) != 0 would be unjustified at the current tolerance."""


class TruncationError(EistrigError, ValueError):
    """A coefficient was requested outside the reliably-known degree window
    of a truncated series."""
