"""
Utils package for the Zhelobenko/Kostant verification engine
Contains the error handling infrastructure and report emission

``report_writer`` depends on the domain packages and is imported from its module.
"""

from .error_handler import (
    DimensionMismatchError, ErrorCategory, ErrorContext, ErrorInfo, ErrorReporter, ErrorSeverity,
    InternalConsistencyError, ReportError, UsageError, VerificationFailure, ZhelobenkoError,
    error_reporter, handle_exception
)

__all__ = [
    'ZhelobenkoError', 'UsageError', 'DimensionMismatchError', 'InternalConsistencyError',
    'VerificationFailure', 'ReportError', 'ErrorInfo', 'ErrorCategory', 'ErrorSeverity',
    'ErrorContext', 'ErrorReporter', 'error_reporter', 'handle_exception',
]
