"""Exception hierarchy shared across the package.

Everything derives from :class:`ValueError` so callers that do not care
about the fine distinctions can catch one base class.
"""


class DomainError(ValueError):
    """A numeric precondition was violated (bad n, length mismatch,
    nonpositive log argument, eigenvalue out of range, ...)."""


class DegenerateDataError(ValueError):
    """Data carry no usable variation: constant vector, zero variance,
    or a degenerate (B = 0) MSE quadratic."""


class CollinearityError(DegenerateDataError):
    """|rho| = 1 where the formulas divide by 1 - rho^2 (regression
    coefficients, multiple correlation, VIF, condition index)."""


class ZeroMeanError(DegenerateDataError):
    """A coefficient of variation was requested for a variable whose
    mean is exactly zero.  The message names the variable."""

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"mean of {variable!r} is zero; coefficient of variation undefined")


class SingularSampleError(DomainError):
    """A sample mean sits in a ratio denominator and is zero."""


class IncompleteSummaryError(ValueError):
    """Summary statistics required by an estimator are missing.
    ``missing`` lists the absent field names."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__("missing summary fields: " + ", ".join(self.missing))


class NotPositiveDefiniteError(ValueError):
    """Cholesky factorization failed; ``pivot`` is the 0-based index of
    the first nonpositive pivot."""

    def __init__(self, pivot: int):
        self.pivot = pivot
        super().__init__(f"matrix is not positive definite (pivot {pivot} <= 0)")


class ConfigError(ValueError):
    """A simulation config file could not be parsed; ``line`` is the
    1-based offending line number (None for file-level problems)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
