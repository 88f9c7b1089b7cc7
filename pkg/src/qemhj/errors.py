"""Exception hierarchy shared by every module."""


class QemhjError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(QemhjError, ValueError):
    """A point or grid lies outside the working domain of a mass profile."""


class BranchError(QemhjError, ValueError):
    """A residue radicand is negative: parameters outside the solvable regime."""


class ConstraintError(QemhjError, ValueError):
    """A solvability constraint (e.g. V2 = epsilon) is violated."""


class UnboundError(QemhjError, ValueError):
    """The bound-state condition A > n fails."""


class PositiveEnergyError(QemhjError, ValueError):
    """A bound-state expansion was requested at non-negative energy."""


class NegativeRadicandError(QemhjError, ValueError):
    """A square root of a negative parameter combination was requested."""


class RecurrenceBreakdown(QemhjError, ArithmeticError):
    """A three-term recurrence denominator vanished."""


class QuadratureError(QemhjError, ArithmeticError):
    """Non-finite integrand samples on a contour."""


class AllZeroError(QemhjError, ValueError):
    """A sampled wavefunction vanishes identically."""


class SingularNodeError(QemhjError, ValueError):
    """A momentum function with flagged poles cannot be integrated."""


class ConvergenceError(QemhjError, RuntimeError):
    """An iterative eigensolver did not converge."""


class RootFindingError(QemhjError, RuntimeError):
    """Polynomial zeros could not be located reliably."""


class GridMismatchError(QemhjError, ValueError):
    """Two sampled functions do not share a grid."""


class ConfigError(QemhjError, ValueError):
    """A run configuration is missing keys or holds invalid values."""
