"""Exception types raised by the toolkit.

Every error derives from :class:`KreslingError`, which itself subclasses
``ValueError`` so callers that only care about bad input can catch that.
"""


class KreslingError(ValueError):
    """Base class for all toolkit errors."""

    kind = "input"


class DomainError(KreslingError):
    """An argument lies outside the domain of a closed-form expression."""

    kind = "domain"


class GeometryError(KreslingError):
    """The requested module geometry cannot close."""

    kind = "geometry"


class SingularConfigurationError(KreslingError):
    """A panel or derivative degenerates at the requested configuration."""

    kind = "singular"


class NoEquilibriumError(KreslingError):
    """No equilibrium rotation exists for the requested pressure."""

    kind = "no-equilibrium"


class FitError(KreslingError):
    """Material fitting failed (bad samples or rank-deficient design)."""

    kind = "fit"


class ConfigError(KreslingError):
    """A configuration file failed to parse or validate."""

    kind = "config"


class OutputError(KreslingError):
    """A report could not be produced or written."""

    kind = "output"
