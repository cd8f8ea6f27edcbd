"""Utility functions and constants for the SOA threat toolkit."""

from .constants import (
    DEFAULT_ORACLE_NODE_BUDGET,
    GAP_MARKER,
    PATH_ARROW,
    SCHEMA_VERSION,
    ExitCode,
    Predicate,
    Profile,
    ViolationRule,
)

from .exceptions import (
    AsilMismatchError,
    DeliveryError,
    ProgramError,
    InvalidModelError,
    ModelParseError,
    ModelReferenceError,
    ModelSchemaError,
    OracleBudgetExceeded,
    ReportError,
    SafetyParseError,
    SafetyReferenceError,
    SafetySchemaError,
    SelfCheckError,
    ToolkitError,
)

from .logging import configure_logging

__all__ = [
    'DEFAULT_ORACLE_NODE_BUDGET',
    'GAP_MARKER',
    'PATH_ARROW',
    'SCHEMA_VERSION',
    'ExitCode',
    'Predicate',
    'Profile',
    'ViolationRule',
    'AsilMismatchError',
    'DeliveryError',
    'InvalidModelError',
    'ModelParseError',
    'ModelReferenceError',
    'ModelSchemaError',
    'OracleBudgetExceeded',
    'ProgramError',
    'ReportError',
    'SafetyParseError',
    'SafetyReferenceError',
    'SafetySchemaError',
    'SelfCheckError',
    'ToolkitError',
    'configure_logging',
]
