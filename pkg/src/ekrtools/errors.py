"""Exception hierarchy shared by every module."""

from __future__ import annotations


class EkrError(Exception):
    """Base class for all errors raised by ekrtools."""


class RangeError(EkrError, ValueError):
    """An element, size, or rank lies outside its allowed range."""


class CardinalityError(EkrError, ValueError):
    """A set does not have the cardinality required by its family."""


class DuplicateError(EkrError, ValueError):
    """A family was given the same set twice."""


class GroundMismatchError(EkrError, ValueError):
    """Two objects live on ground sets of different sizes."""


class NotContainedError(EkrError, ValueError):
    """A set is not contained in the window it is complemented in."""


class PreconditionError(EkrError, ValueError):
    """Generic violated precondition; ``intersection_sizes`` carries L when relevant."""

    def __init__(self, message: str, intersection_sizes: frozenset[int] | None = None):
        super().__init__(message)
        self.intersection_sizes = intersection_sizes


class _WitnessPairError(EkrError, ValueError):
    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


class NotBIntersectingError(_WitnessPairError):
    """Two members meet in fewer than ``b`` elements; ``witness`` is that pair."""


class NotIntersectingError(_WitnessPairError):
    """Two members are disjoint; ``witness`` is that pair."""


class BoundNotApplicableError(EkrError, ValueError):
    """The EKR bound needs n >= 2k."""


class ScaleError(EkrError, ValueError):
    """An exhaustive computation was asked to run beyond its scale guard."""
