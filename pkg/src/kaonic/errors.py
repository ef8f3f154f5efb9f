"""Exception types shared by every module."""


class KaonError(Exception):
    """Base class for all errors raised by kaonic."""


class InvalidArgumentError(KaonError, ValueError):
    """An argument is outside the domain of the operation."""


class DegenerateParameterError(KaonError, ValueError):
    """The CP weights make a ratio q/p or p/q undefined."""


class SurvivalUnderflowError(KaonError, ArithmeticError):
    """Survival probability fell below the representable range."""


class ConfigurationError(KaonError, ValueError):
    """An eraser configuration combines incompatible settings."""
