"""Exception types shared across the package."""


class QcorrError(Exception):
    """Base class for all package-specific errors."""


class InvalidDimension(QcorrError):
    """Mode/particle counts that cannot define a basis (or a bad mode index)."""


class BasisMismatch(QcorrError):
    """Two bases that were expected to be compatible are not."""


class UnknownOccupation(QcorrError):
    """An occupation vector that does not belong to the given basis."""


class DimensionMismatch(QcorrError):
    """Array shapes incompatible with the basis or with each other."""


class InvalidState(QcorrError):
    """A density matrix violating hermiticity/positivity/trace tolerances."""


class InvalidSpec(QcorrError):
    """An ill-formed classical-state recipe or option set."""


class NotMaxCorrelated(QcorrError):
    """Joint state lacks the maximally correlated sparsity pattern."""


class UnsupportedParticleNumber(QcorrError):
    """Operation defined only for a specific particle number."""


class StateFileError(QcorrError):
    """State-file syntax or structure error, with position information."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
