"""Exception hierarchy shared across the package."""


class RingtourError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RingtourError, ValueError):
    """An argument is outside the operation's domain (bad vertex, edge id,
    mismatched ambient edge count, invalid range, ...)."""


class ParseError(RingtourError, ValueError):
    """An instance file could not be parsed."""


class InvalidInstanceError(RingtourError, ValueError):
    """Parsed data does not describe a valid complete weighted instance."""


class AsymmetricWeightsError(InvalidInstanceError):
    """Weight matrix is not symmetric."""


class NegativeWeightError(InvalidInstanceError):
    """Weight matrix contains a negative or non-finite entry."""


class BadOrderError(InvalidInstanceError):
    """Vertex count is below the minimum of 3."""
