"""Exception types raised across the package.

Numerical routines raise these instead of bare ``ValueError`` /
``RuntimeError`` so callers (in particular the command line front-end)
can distinguish bad input from a failed computation.
"""


class NotPositiveDefinite(ValueError):
    """A matrix required to be positive definite is not."""


class ConvergenceFailure(RuntimeError):
    """An iterative routine hit its iteration cap before converging."""


class DimensionOverflow(ValueError):
    """A product dimension exceeds the configured cap."""


class DimensionMismatch(ValueError):
    """Two operands have incompatible shapes."""


class BadDimension(ValueError):
    """A dimension does not satisfy a structural requirement."""


class RhoOutOfRange(ValueError):
    """A correlation-like parameter lies outside its admissible interval."""


class NonPositiveDiagonal(ValueError):
    """A pilot matrix has a diagonal entry too small for coordinate descent."""


class DegenerateColumn(ValueError):
    """A data column is constant, so its rank correlation is undefined."""


class DegenerateAxis(ValueError):
    """A row or column axis has zero energy, so normalization is undefined."""


class NuTooSmall(ValueError):
    """Degrees of freedom too small for the covariance to exist."""


class NotCorrelation(ValueError):
    """A matrix required to be a correlation matrix has a non-unit diagonal."""


class EmptyPath(ValueError):
    """A solution path with no grid points was supplied."""
