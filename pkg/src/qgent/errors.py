"""Exception hierarchy shared by all qgent modules."""


class QgentError(Exception):
    """Base class for library errors."""


class ShapeError(QgentError, ValueError):
    """Operand has the wrong dimension or is not square."""


class SizeLimitError(QgentError, ValueError):
    """Result would exceed the configured dense-matrix size cap."""


class DomainError(QgentError, ValueError):
    """Argument outside the domain the operation is defined on."""


class DegenerateInputError(DomainError):
    """All-zero vector where a normalizable one is required."""


class IncompleteSpecError(QgentError, ValueError):
    """Phase specification is missing one or more index pairs."""


class NonUnitaryAmplitudeError(QgentError, ValueError):
    """Entangler amplitude with modulus other than one in strict mode."""

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class UnsupportedDimensionError(QgentError, ValueError):
    """Requested Hilbert-space dimension is not supported."""
