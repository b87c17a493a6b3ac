"""Exception hierarchy shared by all modules."""


class CylradError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CylradError, ValueError):
    """Argument outside the mathematical domain of a function."""


class OverflowRiskError(CylradError, OverflowError):
    """An unscaled Bessel value would leave the double range; use ratio forms."""


class PoleError(CylradError, ZeroDivisionError):
    """Argument sits on (or numerically at) a zero of J_n."""


class DenominatorDegeneracyError(CylradError, ArithmeticError):
    """The coupled-polarization denominator cancelled to roundoff."""


class SingularMatrixError(CylradError, ArithmeticError):
    """Boundary-value matrix is numerically singular."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class BranchDegeneracyError(CylradError, ArithmeticError):
    """Ordinary and extraordinary transmitted waves became indistinguishable."""


class OutOfWindowError(CylradError, ValueError):
    """Frequency outside the validity window of a material model."""


class ParseError(CylradError, ValueError):
    """Malformed row in a tabulated optical data file."""


class MonotonicityError(CylradError, ValueError):
    """Tabulated energies are not strictly ascending."""


class NegativeImaginaryError(CylradError, ValueError):
    """Tabulated Im(eps) is negative (active medium)."""


class TruncationError(CylradError, RuntimeError):
    """Multipole sum did not converge before the order cap."""

    def __init__(self, message, n_max=None, tail=None):
        super().__init__(message)
        self.n_max = n_max
        self.tail = tail


class ConvergenceError(CylradError, RuntimeError):
    """A quadrature missed its tolerance; carries the achieved estimate."""

    def __init__(self, message, estimate=None, achieved=None):
        super().__init__(message)
        self.estimate = estimate
        self.achieved = achieved


class RegimeError(CylradError, ValueError):
    """An asymptotic formula was requested outside the regime where it is finite."""


class ConfigError(CylradError, ValueError):
    """Invalid run configuration."""
