"""Exception types raised by the library.

Every failure mode named in an operation contract has its own class so
callers (and the CLI) can map them to exit codes without string matching.
"""


class AntidiagError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(AntidiagError, ValueError):
    """Operand shapes are incompatible."""


class SingularMatrix(AntidiagError):
    """A pivot underflowed tolerance during LU elimination."""


class NoConvergence(AntidiagError):
    """The QR eigensolver exhausted its sweep budget."""


class NotAntidiagonal(AntidiagError):
    """Off-antidiagonal mass above tolerance; carries the worst offender."""

    def __init__(self, message, position=None, magnitude=None):
        super().__init__(message)
        self.position = position
        self.magnitude = magnitude


class SingularAntidiagonal(AntidiagError):
    """An antidiagonal coefficient required to be nonzero is zero."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class LinearlyDependentChoice(AntidiagError):
    """A supplied replacement vector pair is linearly dependent."""


class PrecondViolated(AntidiagError):
    """The closed-form shortcut was used outside its guaranteed domain."""


class NotNormal(AntidiagError):
    """Transpose-pair moduli differ; no unitary diagonalization exists."""


class NotTraceless(AntidiagError):
    """An antisymmetric target was requested for a matrix with trace != 0."""


class NotRealAntisymmetric(AntidiagError):
    """Input must be real with M^T = -M."""


class InvalidDiagonalization(AntidiagError):
    """The supplied (V, D) is not a paired diagonalization of M."""


class SingularTransform(AntidiagError):
    """The conjugating matrix is numerically singular."""


class NotCentrosymmetric(AntidiagError):
    """The conjugating matrix does not commute with the exchange matrix."""


class SingularFreeBlock(AntidiagError):
    """A free 2x2 block supplied for an all-zero pair is singular."""


class BothZero(AntidiagError):
    """The 2x2 Schur block needs at least one nonzero coefficient."""
