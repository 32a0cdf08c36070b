"""Exceptions raised by slitwalk.

Everything derives from :class:`WalkError`, and also from the closest
builtin, so ``except ValueError`` keeps working for callers that don't care
about the details.
"""


class WalkError(Exception):
    """Base class for all slitwalk errors."""


class ValidationError(WalkError, ValueError):
    """An argument or configuration value is invalid."""


class NonNormalizedCoinState(ValidationError):
    pass


class OddParitySite(ValidationError):
    pass


class SiteOutsideBox(ValidationError):
    pass


class NonUnitary(ValidationError):
    pass


class OverlappingSlits(ValidationError):
    pass


class TimeOutsideWindow(ValidationError):
    pass


class EmptyProfile(ValidationError):
    pass


class MismatchedScreens(ValidationError):
    pass


class RadiusTooLarge(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ConfigError(ValidationError):
    """Problem with an experiment configuration."""


class ParseError(ConfigError):
    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.line = line
        self.column = column
        if line:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnknownKey(ConfigError):
    def __init__(self, key: str, section: str, line: int = 0) -> None:
        self.key = key
        self.section = section
        self.line = line
        where = f"line {line}: " if line else ""
        super().__init__(f"{where}unknown key {key!r} in section [{section}]")


class UnknownPreset(ConfigError):
    pass


class SupportTouchesBoundary(WalkError, RuntimeError):
    """The walker got too close to the edge of its bounding box."""


class OutputError(WalkError, OSError):
    """Result files could not be written."""


CONFIG_ERROR_TUPLE = (
    ValidationError,
    FileNotFoundError,
    NotADirectoryError,
)
