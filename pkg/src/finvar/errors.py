"""Exception hierarchy shared by all finvar modules."""

from __future__ import annotations


class FinvarError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(FinvarError):
    """Vector or matrix shapes are incompatible."""


class DimensionOverflow(FinvarError):
    """A graded component exceeds the configured column cap."""


class SingularMatrix(FinvarError):
    """A matrix required to be invertible is singular."""


class GroupTooLarge(FinvarError):
    """Group closure exceeded the element cap."""


class NotASubgroup(FinvarError):
    """Member set is not closed under the Cayley table."""


class ModularGroupOrder(FinvarError):
    """The field characteristic divides the group order, so the
    Reynolds operator does not exist."""


class CapExhausted(FinvarError):
    """No full ideal slice was found up to the degree cap."""

    def __init__(self, cap: int, message: str | None = None):
        self.cap = cap
        super().__init__(message or f"no full degree slice up to cap {cap}")


class DegreeOutOfRange(FinvarError):
    """Rewrite target degree exceeds (p-1) * dim V; no certificate is
    claimed there."""


class InversionFailure(FinvarError):
    """Internal error: a scalar that must be invertible inside the
    rewriter's guaranteed range was zero.  Carries a debug dump."""


class HypothesisUnmet(FinvarError):
    """A theorem hypothesis does not hold for the given instance."""


class DecompositionUnavailable(FinvarError):
    """Isotypic decomposition is only automatic for abelian groups over
    fields containing the needed roots of unity."""


class ParseError(FinvarError):
    """Malformed polynomial or instance text."""
