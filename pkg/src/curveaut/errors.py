"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class CurveAutError(Exception):
    exit_code = 4


class UsageError(CurveAutError):
    exit_code = 1


class ParameterError(CurveAutError, ValueError):
    exit_code = 1


class DomainError(CurveAutError, ValueError):
    exit_code = 1


class UnsupportedError(CurveAutError):
    exit_code = 1


class DataError(CurveAutError):
    """Malformed or inconsistent input data (catalog, tables)."""
    exit_code = 2


class ParseError(DataError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(DataError):
    pass


class ResourceError(CurveAutError):
    exit_code = 3


class InconsistencyError(CurveAutError):
    exit_code = 4
