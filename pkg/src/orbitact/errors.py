"""Exception hierarchy shared by all modules."""


class OrbitactError(ValueError):
    """Base class for every error raised by this package."""


class DimensionMismatch(OrbitactError):
    pass


class RoleError(OrbitactError):
    """A matrix fails the algebra / group / Hermitian membership check."""


class NumericalFault(OrbitactError):
    """An internal cross-check disagreed beyond tolerance."""


class RegularityError(OrbitactError):
    pass


class IntegralityError(OrbitactError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class ClosureError(OrbitactError):
    """The isotopy does not return to the identity."""


class ChartError(OrbitactError):
    """A point or trajectory leaves the stereographic chart."""


class ConfigError(OrbitactError):
    """Invalid scenario configuration; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
