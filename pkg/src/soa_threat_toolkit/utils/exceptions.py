"""Custom exceptions for the SOA threat toolkit."""


class ToolkitError(Exception):
    """Base class for every error raised by the toolkit."""

    def __init__(self, message, details=None):
        self.message = message
        self.details = details if details is not None else []
        super().__init__(self.message)


class ModelParseError(ToolkitError):
    """Raised when a model document is not well-formed JSON."""


class ModelSchemaError(ToolkitError):
    """Raised when a model document has unknown fields or wrong types."""


class ModelReferenceError(ToolkitError):
    """Raised when a model document references an undeclared id."""


class InvalidModelError(ToolkitError):
    """Raised when an operation requires a validated model."""


class SafetyParseError(ToolkitError):
    """Raised when a safety document is not well-formed JSON."""


class SafetySchemaError(ToolkitError):
    """Raised when a safety document has unknown fields or wrong types."""


class SafetyReferenceError(ToolkitError):
    """Raised when a safety document references an unknown component, topic or hazard."""


class AsilMismatchError(ToolkitError):
    """Raised when a declared ASIL disagrees with the computed one."""


class OracleBudgetExceeded(ToolkitError):
    """Raised when the brute-force oracle exceeds its node budget."""

    def __init__(self, message, budget=None):
        self.budget = budget
        super().__init__(message, {"budget": budget})


class SelfCheckError(ToolkitError):
    """Raised when engine and oracle results disagree."""


class ReportError(ToolkitError):
    """Raised when a report document cannot be read or lacks a section."""


class DeliveryError(ToolkitError):
    """Raised when card delivery fails."""

    def __init__(self, message, status_code=None):
        self.status_code = status_code
        super().__init__(message, {"status_code": status_code})


class ProgramError(ToolkitError):
    """Raised when a rule set is malformed or cannot be stratified."""
