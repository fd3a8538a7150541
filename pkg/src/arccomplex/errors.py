"""Exception types shared across the package."""


class ArcComplexError(Exception):
    """Base class for all package errors."""


class InvalidTriangulation(ArcComplexError):
    """The gluing data does not describe an ideal triangulation."""


class InvalidArc(ArcComplexError):
    """A path or curve description is malformed or not reduced/essential."""


class TriangulationMismatch(ArcComplexError):
    """Two objects live on different triangulations."""


class NotFlippable(ArcComplexError):
    """The requested edge bounds the same triangle on both sides."""


class InternalContractError(ArcComplexError):
    """A runtime postcondition of the contraction machinery failed."""


class BallTooSmall(ArcComplexError):
    """An operation produced an arc outside the enumerated complexity ball.

    Raised instead of silently truncating; callers should retry with a
    larger bound.
    """


class CertificateError(ArcComplexError):
    """A contraction certificate failed replay validation."""
