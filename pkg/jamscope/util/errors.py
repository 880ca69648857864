class JamscopeError(Exception):
    """Base class for errors raised by jamscope."""


class ConfigError(JamscopeError, ValueError):
    """Invalid or unknown configuration key. `key` names the offending key."""

    def __init__(self, key, message=None):
        self.key = key
        super().__init__(message or f"invalid config key: {key}")


class DomainError(JamscopeError, ValueError):
    """Degenerate geometry or an argument outside its physical domain."""


class ShapeError(JamscopeError, ValueError):
    """Mismatched tap, symbol or sequence lengths."""


class UnderdeterminedError(JamscopeError, ValueError):
    """Pilot block too short for the number of taps (K <= 2N)."""


class ConditioningError(JamscopeError, ValueError):
    """Singular or near-singular pilot design matrix."""


class UndefinedInputError(JamscopeError, ValueError):
    """An operation received an input it has no defined result for."""


class StratificationError(JamscopeError, ValueError):
    """A class required by the split is missing from the data."""


class UnknownCaseError(JamscopeError, ValueError):
    pass


class DatasetError(JamscopeError):
    """Missing or unreadable simulation data."""
