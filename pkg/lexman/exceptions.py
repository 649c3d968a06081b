"""Errors raised by lexman.

Every error derives from :class:`LexmanError`; the CLI maps each family to an
exit code through :data:`EXIT_CODES`.
"""


class LexmanError(Exception):
    """Base class for every error raised by lexman."""


class RingMismatchError(LexmanError, ValueError):
    """Monomials or ideals from polynomial rings with different variable counts."""


class InvariantError(LexmanError, ValueError):
    """A value violates the invariants of its type."""


class PreconditionError(LexmanError, ValueError):
    """An operation was called outside of its hypotheses."""


class ParseError(InvariantError):
    """An ideal file could not be parsed."""

    def __init__(self, message: str, line: int = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ConfigError(InvariantError):
    """Settings failed validation."""


class TruncationError(LexmanError):
    """The truncation degree is too small to decide the answer."""


class BoundExceededError(LexmanError):
    """A configured size bound was exceeded."""


class ClosureError(LexmanError):
    """A graded monomial space that must be an ideal is not closed under multiplication."""


class HilbertMismatchError(LexmanError):
    """A step that must preserve the Hilbert function changed it."""


class ConstructionError(LexmanError):
    """A constructed object failed its post-verification."""


class PropertyViolation(LexmanError):
    """A property that should always hold was observed to fail."""


class StabilizationError(LexmanError):
    """The stabilization pipeline hit its step cap or got stuck.

    Args:
        message: what went wrong
        ideal: the last ideal reached
        log: the steps applied so far

    """

    def __init__(self, message: str, ideal=None, log=None):
        super().__init__(message)
        self.ideal = ideal
        self.log = list(log or [])


USAGE_EXIT = 2
VIOLATION_EXIT = 1
LIMIT_EXIT = 3

EXIT_CODES = (
    (InvariantError, USAGE_EXIT),
    (RingMismatchError, USAGE_EXIT),
    (PreconditionError, USAGE_EXIT),
    (TruncationError, LIMIT_EXIT),
    (BoundExceededError, LIMIT_EXIT),
    (StabilizationError, LIMIT_EXIT),
    (ClosureError, VIOLATION_EXIT),
    (HilbertMismatchError, VIOLATION_EXIT),
    (ConstructionError, VIOLATION_EXIT),
    (PropertyViolation, VIOLATION_EXIT),
)


def exit_code_for(error: LexmanError) -> int:
    """Map an error onto the CLI exit code of its family."""
    for error_type, code in EXIT_CODES:
        if isinstance(error, error_type):
            return code
    return VIOLATION_EXIT
