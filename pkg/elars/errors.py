"""Exception hierarchy shared by all elars modules."""


class ElarsError(Exception):
    """Base class for every error raised on purpose by elars."""


class DomainError(ElarsError, ValueError):
    """An operation was called outside its precondition."""


class StreamOrderError(DomainError):
    """Pointwise input arrived out of time order."""


class GateRefused(ElarsError):
    """A program passed neither decidability gate and no fuel override was given."""


class ConfigError(ElarsError):
    """Settings file or environment override could not be used."""
