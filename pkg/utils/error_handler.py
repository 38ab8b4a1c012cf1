"""
Error Handling Module for the Zhelobenko/Kostant verification engine

This module provides the custom exception hierarchy, structured error records and the
central error reporter used by every computation package. Three kinds of failure are
distinguished, and the command-line front end maps them onto exit codes:

- usage errors (bad type strings, rank mismatches, malformed rationals): exit code 2
- internal consistency failures (a mathematical self-check did not hold): exit code 1
- verification failures (a verdict came out negative): exit code 1
"""

import logging
import traceback
import functools
from typing import Dict, Any, Optional, Callable, List
from enum import Enum
from dataclasses import dataclass, field
from datetime import datetime

logger = logging.getLogger(__name__)


class ErrorSeverity(Enum):
    """Error severity levels"""
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


class ErrorCategory(Enum):
    """Error categories for classification"""
    USAGE = "usage"
    DIMENSION = "dimension"
    CONSISTENCY = "consistency"
    VERIFICATION = "verification"
    REPORT = "report"
    UNKNOWN = "unknown"


@dataclass
class ErrorInfo:
    """Structured error information"""
    message: str
    category: ErrorCategory
    severity: ErrorSeverity
    original_exception: Optional[Exception] = None
    context: Dict[str, Any] = field(default_factory=dict)
    timestamp: datetime = field(default_factory=datetime.now)
    traceback_str: Optional[str] = None
    recovery_suggestions: List[str] = field(default_factory=list)
    user_message: Optional[str] = None


# =============================================================================
# Custom Exception Classes
# =============================================================================

class ZhelobenkoError(Exception):
    """Base exception for all engine specific errors"""

    exit_code = 1

    def __init__(self, message: str, error_info: Optional[ErrorInfo] = None):
        super().__init__(message)
        self.error_info = error_info or ErrorInfo(
            message=message,
            category=ErrorCategory.UNKNOWN,
            severity=ErrorSeverity.MEDIUM
        )


class UsageError(ZhelobenkoError):
    """Invalid input supplied by the caller (type strings, indices, literals)"""

    exit_code = 2

    def __init__(self, message: str, argument: Optional[str] = None,
                 value: Any = None):
        error_info = ErrorInfo(
            message=message,
            category=ErrorCategory.USAGE,
            severity=ErrorSeverity.MEDIUM,
            context={"argument": argument, "value": value} if argument else {},
            recovery_suggestions=[
                "Check the Lie type string (e.g. A2, B3, G2)",
                "Rationals are written as integers or p/q",
                "Run with --help for the accepted flags"
            ],
            user_message="Invalid input. Please check the command-line arguments."
        )
        super().__init__(message, error_info)


class DimensionMismatchError(UsageError):
    """Operands of incompatible rank or shape"""

    def __init__(self, message: str, expected: Any = None, actual: Any = None):
        super().__init__(message)
        self.error_info.category = ErrorCategory.DIMENSION
        self.error_info.context = {"expected": expected, "actual": actual}


class InternalConsistencyError(ZhelobenkoError):
    """A built-in mathematical self-check failed"""

    def __init__(self, message: str, check: Optional[str] = None,
                 context: Optional[Dict[str, Any]] = None):
        details = dict(context or {})
        if check:
            details["check"] = check
        error_info = ErrorInfo(
            message=message,
            category=ErrorCategory.CONSISTENCY,
            severity=ErrorSeverity.CRITICAL,
            context=details,
            recovery_suggestions=[
                "Re-run with --log-level DEBUG to see the failing computation",
                "Report the type and parameters that triggered the failure"
            ],
            user_message="An internal consistency check failed; results are not trustworthy."
        )
        super().__init__(message, error_info)


class VerificationFailure(ZhelobenkoError):
    """A verification verdict was negative"""

    def __init__(self, message: str, lie_type: Optional[str] = None,
                 context: Optional[Dict[str, Any]] = None):
        details = dict(context or {})
        if lie_type:
            details["type"] = lie_type
        error_info = ErrorInfo(
            message=message,
            category=ErrorCategory.VERIFICATION,
            severity=ErrorSeverity.HIGH,
            context=details,
            user_message="Verification failed. See the report for per-degree details."
        )
        super().__init__(message, error_info)


class ReportError(ZhelobenkoError):
    """Report serialization or file system errors"""

    def __init__(self, message: str, path: Optional[str] = None,
                 original_exception: Optional[Exception] = None):
        error_info = ErrorInfo(
            message=message,
            category=ErrorCategory.REPORT,
            severity=ErrorSeverity.HIGH,
            original_exception=original_exception,
            context={"path": path} if path else {},
            recovery_suggestions=[
                "Check file/directory permissions",
                "Try a different output location"
            ],
            user_message="The report could not be written."
        )
        super().__init__(message, error_info)


# =============================================================================
# Error Context Manager
# =============================================================================

class ErrorContext:
    """Context manager that records and logs failures of a named operation"""

    def __init__(self, operation: str, **context: Any):
        self.operation = operation
        self.context = context
        self.errors: List[ErrorInfo] = []

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, exc_tb):
        if exc_value is not None:
            self.record(exc_value)
        return False  # Don't suppress exceptions

    def record(self, exception: BaseException) -> ErrorInfo:
        """Classify, log and store the exception; also used for failures handled inside the block"""
        if isinstance(exception, ZhelobenkoError):
            error_info = exception.error_info
            error_info.context.setdefault("operation", self.operation)
        else:
            error_info = ErrorInfo(
                message=f"Unexpected error: {exception}",
                category=ErrorCategory.UNKNOWN,
                severity=ErrorSeverity.HIGH,
                original_exception=exception if isinstance(exception, Exception) else None,
                context={"operation": self.operation, **self.context},
                traceback_str=traceback.format_exc()
            )

        logger.error(f"Error in {self.operation}: {error_info.message}")
        if error_info.traceback_str:
            logger.debug(f"Traceback: {error_info.traceback_str}")
        self.errors.append(error_info)
        return error_info


# =============================================================================
# Error Reporting
# =============================================================================

class ErrorReporter:
    """Centralized error reporting and logging"""

    def __init__(self):
        self.error_history: List[ErrorInfo] = []

    def report_error(self, error_info: ErrorInfo, context: Optional[Dict[str, Any]] = None):
        """Report an error with full context"""
        self.error_history.append(error_info)

        if error_info.severity == ErrorSeverity.CRITICAL:
            logger.critical(f"CRITICAL ERROR: {error_info.message}")
        elif error_info.severity == ErrorSeverity.HIGH:
            logger.error(f"ERROR: {error_info.message}")
        elif error_info.severity == ErrorSeverity.MEDIUM:
            logger.warning(f"WARNING: {error_info.message}")
        else:
            logger.info(f"INFO: {error_info.message}")

        if error_info.context:
            logger.debug(f"Context: {error_info.context}")
        if context:
            logger.debug(f"Additional context: {context}")
        if error_info.traceback_str:
            logger.debug(f"Traceback: {error_info.traceback_str}")

    def get_error_summary(self) -> Dict[str, Any]:
        """Get summary of all reported errors"""
        if not self.error_history:
            return {"total_errors": 0, "categories": {}, "severity_counts": {}}

        categories: Dict[str, int] = {}
        severity_counts: Dict[str, int] = {}
        for error in self.error_history:
            cat = error.category.value
            categories[cat] = categories.get(cat, 0) + 1
            sev = error.severity.value
            severity_counts[sev] = severity_counts.get(sev, 0) + 1

        return {
            "total_errors": len(self.error_history),
            "categories": categories,
            "severity_counts": severity_counts,
            "recent_errors": [
                {
                    "message": e.message,
                    "category": e.category.value,
                    "severity": e.severity.value,
                    "timestamp": e.timestamp.isoformat()
                }
                for e in self.error_history[-10:]
            ]
        }

    def clear(self):
        """Forget all recorded errors"""
        self.error_history.clear()


# =============================================================================
# Global Error Handler Instance
# =============================================================================

error_reporter = ErrorReporter()


def handle_exception(func: Callable) -> Callable:
    """Decorator to report exceptions; foreign exceptions are wrapped in ZhelobenkoError"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ZhelobenkoError as e:
            error_reporter.report_error(e.error_info)
            raise
        except Exception as e:
            error_info = ErrorInfo(
                message=f"Unexpected error in {func.__name__}: {str(e)}",
                category=ErrorCategory.UNKNOWN,
                severity=ErrorSeverity.MEDIUM,
                original_exception=e,
                traceback_str=traceback.format_exc()
            )
            error_reporter.report_error(error_info)
            raise ZhelobenkoError(f"Unexpected error: {str(e)}", error_info) from e

    return wrapper
