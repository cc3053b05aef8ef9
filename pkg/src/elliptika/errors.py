"""Exception and warning types shared across the library."""


class EllipticaError(Exception):
    """Base class for all elliptika errors."""


class PoleProximity(EllipticaError):
    """Evaluation point lies within the guard distance of a pole."""


class DomainError(EllipticaError):
    """Arguments lie outside the method's domain of validity."""


class UnsupportedOrder(EllipticaError):
    """Closed-form Laurent coefficients only exist for low orders."""


class RadiusTooLarge(EllipticaError):
    """Contour radius reaches past the nearest pole."""


class NotAdmissible(EllipticaError):
    """Parity hypothesis of the reciprocity law fails for this (a, b)."""


class ParityViolation(EllipticaError):
    """Classical identity requested with the wrong parity of (a, b)."""


class ConfigError(EllipticaError):
    """Invalid suite configuration."""


class ParseError(EllipticaError):
    """Malformed CLI argument or config value."""


class TruncationNotConverged(UserWarning):
    """Series hit max_terms before reaching the tail target.

    Values are still returned, with the (degraded) tail estimate attached.
    """
