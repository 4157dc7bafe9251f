"""Exception types raised across the package."""


class SphereVolError(Exception):
    """Base class for all package errors."""


class DimensionError(SphereVolError, ValueError):
    """Input has the wrong shape or is lower-dimensional than required."""


class UnsupportedError(SphereVolError, ValueError):
    """The configuration is outside what the routine handles."""


class NotGramMatrixError(SphereVolError, ValueError):
    """A symmetric matrix is indefinite beyond tolerance."""


class PreconditionError(SphereVolError, ValueError):
    """A documented precondition of an operation does not hold."""


class DegenerateSimplexError(SphereVolError, ValueError):
    """A simplex has (numerically) zero volume."""
