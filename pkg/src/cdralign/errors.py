"""Library-wide exception types, mapped to CLI exit codes."""


class CdralignError(Exception):
    """Base class for all library errors."""


class ConfigError(CdralignError):
    """Invalid configuration or arguments (CLI exit code 2)."""


class DataError(CdralignError):
    """Malformed or missing data files (CLI exit code 3)."""


class NumericError(CdralignError):
    """Non-finite values encountered during computation (CLI exit code 4)."""
