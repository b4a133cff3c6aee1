"""Exception hierarchy shared by the engine modules and mapped to CLI exit codes."""


class MomentsError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class DomainError(MomentsError, ValueError):
    """A parameter lies outside the range where a formula is valid."""

    exit_code = 2


class PoleError(DomainError):
    """A retained hypergeometric term has a vanishing denominator."""


class DimensionError(DomainError):
    """A specialization point is too short for the requested partition."""


class UnsupportedFeatureError(DomainError):
    """The request needs machinery deliberately left out of this package."""


class InconsistencyError(MomentsError, ArithmeticError):
    """Two independent routes to the same exact value disagreed."""

    exit_code = 3


class CapacityError(MomentsError):
    """A request exceeds a configured size guard."""

    exit_code = 4


class DegenerateSampleError(MomentsError, ArithmeticError):
    """A sampled spectrum makes the characteristic polynomial vanish numerically."""

    exit_code = 3
