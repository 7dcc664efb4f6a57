"""Shared exception types.

Every error raised intentionally by this package derives from
:class:`TautcombError`, so callers can catch one base class at the CLI
boundary and map it to an exit code.
"""


class TautcombError(Exception):
    """Base class for all package errors."""


class InvalidPartition(TautcombError):
    """A partition has a non-positive, non-integer, or mis-ordered part."""


class InvalidShape(TautcombError):
    """Shape data (degrees, marking sets, genera, profiles) is inconsistent."""


class IncomparableShapes(TautcombError):
    """Two objects that must share ambient data (d, n, components) do not."""


class DivisionByZero(TautcombError, ZeroDivisionError):
    """Exact division by a zero rational or inversion of a zero weight."""


class IncompatibleIndices(TautcombError):
    """Matrix operation on operands whose index lists disagree."""


class InvalidSubpartition(TautcombError):
    """A derived subpartition argument violates its minimum-part convention."""


class InvalidRange(TautcombError):
    """A scalar argument lies outside the domain of the requested identity."""


class EnumerationBoundExceeded(TautcombError):
    """A requested enumeration exceeds the configured safety bounds."""


class PreconditionViolated(TautcombError):
    """A documented precondition of an operation does not hold."""


class InvalidVertex(TautcombError):
    """Vertex data matches no supported local contribution case."""
