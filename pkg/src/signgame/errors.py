"""Exception types shared across the package."""


class SignGameError(Exception):
    """Base class for all library errors."""


class FamilySpecError(SignGameError, ValueError):
    """Malformed or out-of-bounds graph family spec text."""


class Graph6Error(SignGameError, ValueError):
    """Invalid graph6 text. Carries the byte offset of the first bad byte."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte {offset})"
        super().__init__(message)
        self.offset = offset


class IllegalMoveError(SignGameError):
    """Move targets an occupied or out-of-range vertex."""


class GameOverError(SignGameError):
    """Operation requires a game that is still in progress."""


class IncompleteGameError(SignGameError):
    """Scoring requires every vertex to be assigned."""


class TranscriptError(SignGameError):
    """Move transcript is malformed or inconsistent with its recorded result."""


class BudgetExceededError(SignGameError):
    """Search or enumeration would exceed the configured budget."""


class ReductionError(SignGameError):
    """Reduction preconditions not met."""


class StrategyError(SignGameError):
    """Strategy rule is inapplicable to the given position or graph."""
