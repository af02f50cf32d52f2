"""Exception types shared across the package."""


class BetaOrbitError(Exception):
    """Base class for all package-specific errors."""


# --- number field construction and arithmetic ---

class DegreeZero(BetaOrbitError):
    """The defining polynomial has degree zero."""


class NotSquarefree(BetaOrbitError):
    """The defining polynomial shares a factor with its derivative."""


class NoRealRootAboveOne(BetaOrbitError):
    """No real root greater than one exists at the requested rank."""


class DivisionByZero(BetaOrbitError, ZeroDivisionError):
    """Inversion of zero, or of a zero divisor in a reducible quotient ring."""


class RefinementBudgetExceeded(BetaOrbitError):
    """Internal panic: an enclosure refinement loop hit its hard cap.

    Unreachable for honest nonzero differences; guards misuse with reducible
    defining polynomials where two representations coincide at the root.
    """


# --- dynamics ---

class OutsideInterval(BetaOrbitError):
    """The point lies outside the expansion interval [0, m/(beta-1)]."""


class InvalidRule(BetaOrbitError):
    """An interval-table expansion rule failed validation."""


# --- spectral ---

class ZeroMatrix(BetaOrbitError):
    """The transition matrix has no nonzero entry."""


class DominanceNotEstablished(BetaOrbitError):
    """Dimension requested without a verified dominant eigenvalue."""


# --- spacing ---

class TooLarge(BetaOrbitError):
    """Spectrum enumeration would exceed the memory guard."""


class TooFewPoints(BetaOrbitError):
    """Gap statistics need at least two spectrum points."""
