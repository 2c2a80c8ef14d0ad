"""Exception types shared across the package."""


class SoficLabError(Exception):
    """Base class for all package-specific errors."""


class SpecMismatchError(SoficLabError):
    """Two objects built over different groups were combined."""


class OverlapConflictError(SoficLabError):
    """Patterns disagree on the intersection of their supports."""


class UnsupportedShapeError(SoficLabError):
    """A support shape the operation cannot handle (e.g. non-interval over Z)."""


class WindowTooSmallError(SoficLabError):
    """A finite window does not cover every cell the computation needs."""


class SizeLimitError(SoficLabError):
    """Exact computation would exceed the configured brute-force cap."""


class NotGroupShiftError(SoficLabError):
    """The subshift is not closed under the cellwise group operation."""


class ConfigError(SoficLabError):
    """Bad experiment config text; carries line information."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
