"""Custom exception hierarchy for clsmooth."""

__all__ = [
    "ClsmoothError",
    "ConfigError",
    "DomainEvaluationError",
    "ExpressionError",
    "ExpressionSyntaxError",
    "ExtensionError",
    "GeometryError",
    "InvariantError",
    "PluginError",
    "PreconditionError",
    "ReportError",
    "SingularityError",
    "UnknownIdentifierError",
]


class ClsmoothError(Exception):
    """Base exception for all clsmooth errors."""


class ConfigError(ClsmoothError):
    """Raised when configuration loading or validation fails."""


class PreconditionError(ClsmoothError):
    """Raised when an operation is called outside its preconditions."""


class SingularityError(ClsmoothError):
    """Raised when a truncated series has no finite expansion.

    Either the divisor has zero constant term or exp overflows.
    """


class ExpressionError(ClsmoothError):
    """Base class for expression parsing and evaluation failures."""


class ExpressionSyntaxError(ExpressionError):
    """Raised when an expression cannot be parsed.

    ``offset`` is the byte offset into the source text where parsing stopped.
    """

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifierError(ExpressionSyntaxError):
    """Raised for a name that is neither a variable nor a known function."""


class DomainEvaluationError(ExpressionError):
    """Raised when evaluation divides by zero or overflows.

    ``subexpression`` is the printed form of the offending denominator or call.
    """

    def __init__(self, message: str, subexpression: str) -> None:
        super().__init__(f"{message}: {subexpression}")
        self.subexpression = subexpression


class GeometryError(ClsmoothError):
    """Raised when a domain, window or exhaustion is unusable."""


class InvariantError(ClsmoothError):
    """Raised when an internal invariant fails; carries diagnostics."""


class ExtensionError(ClsmoothError):
    """Raised when an extension operator cannot be constructed."""


class PluginError(ClsmoothError):
    """Raised when operator registration or lookup fails."""


class ReportError(ClsmoothError):
    """Raised when verification reports cannot be produced or written."""
