"""
Exception hierarchy.

Every error raised by the library is a ``ValueError`` so callers that only
care about bad input can catch that, while the CLI distinguishes the
subclasses when choosing an exit status.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple


class GizatullinError(ValueError):
    pass


class ConfigError(GizatullinError):
    pass


class ChainError(GizatullinError):
    """Bad chain, vertex index or weight."""


class StandardizationError(GizatullinError):
    """Search for a standard form gave up; ``frontier`` holds the stuck chains."""

    def __init__(self, message: str, frontier: Sequence[Tuple[int, ...]] = ()):
        super().__init__(message)
        self.frontier = tuple(frontier)


class WordError(GizatullinError):
    pass


class HJError(GizatullinError):
    pass


class PointError(GizatullinError):
    pass


class DivisorError(GizatullinError):
    pass


class ConditionStarError(DivisorError):
    pass


class NonSmoothError(DivisorError):
    pass


class UnrealizableError(DivisorError):
    pass


class ExceptionalSetError(GizatullinError):
    """Two maximal blowup orders disagree on the exceptional components."""


class UnknownShapeError(GizatullinError):
    pass


class ToricError(GizatullinError):
    pass


class LiftFactorizationError(GizatullinError):
    pass


class InvariantViolation(GizatullinError):
    """A structural identity that must always hold did not."""


class CorrespondenceError(GizatullinError):
    pass


class SurfaceSyntaxError(GizatullinError):
    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        field: Optional[str] = None,
    ):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if field is not None:
            where.append(field)
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line = line
        self.column = column
        self.field = field
