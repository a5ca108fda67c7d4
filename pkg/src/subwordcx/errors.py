"""Exception types shared across the package."""


class SubwordcxError(Exception):
    """Base class for all library errors."""


class InvalidType(SubwordcxError):
    """Family/rank combination is not a valid finite Coxeter type."""


class InvalidWord(SubwordcxError):
    """A word contains letters outside the generator range."""


class UnknownVertex(SubwordcxError):
    """A vertex set refers to labels outside the ground set."""


class VertexCollision(SubwordcxError):
    """A supposedly fresh vertex already occurs in the complex."""


class NotAFacet(SubwordcxError):
    """The given face is not a facet of the complex."""


class NotAFace(SubwordcxError):
    """The given vertex set is not a face of the complex."""


class NotPure(SubwordcxError):
    """Operation requires a pure complex."""


class DegreeMismatch(SubwordcxError):
    """Graph node degree does not match the requested truncation."""


class NotSpherical(SubwordcxError):
    """Operation requires a spherical subword complex."""


class WrongPi(SubwordcxError):
    """Operation requires the target element to be the longest element."""


class NotAVertex(SubwordcxError):
    """The given position is not a vertex of the complex."""


class FaceTooSmall(SubwordcxError):
    """Operation requires a face with at least two elements."""


class EmptyComplex(SubwordcxError):
    """Operation is undefined on the empty complex."""


class DimensionMismatch(SubwordcxError):
    """Inputs must have equal dimension."""


class SearchBudgetExceeded(SubwordcxError):
    """A decision search ran out of its node budget; the answer is indeterminate."""
