"""Exception hierarchy shared by every module."""


class QubitStarsError(Exception):
    """Base class for domain errors raised by the library."""


class InvalidStateError(QubitStarsError, ValueError):
    """Malformed amplitudes, wrong qubit count or missing normalization."""


class InvalidOperationError(QubitStarsError, ValueError):
    """Bad local operation, permutation or index set."""


class NotSymmetricError(QubitStarsError):
    """State is not permutation symmetric within tolerance."""


class DegenerateInputError(QubitStarsError):
    """Input sits on a degenerate branch that the algorithm cannot resolve."""


class WrongClassError(QubitStarsError):
    """Three-qubit state belongs to the other SLOCC branch."""


class NotSymmetrizableError(QubitStarsError):
    """No implemented SL(2,C) construction symmetrizes this state."""


class ZeroPolynomialError(QubitStarsError, ValueError):
    """All polynomial coefficients vanish."""
