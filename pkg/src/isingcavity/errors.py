"""Exception types shared across the solver layers."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CriticalPointError(ValueError):
    """Evaluation was requested inside the guard band around the critical
    field J = 1, where the magnetization derivative diverges
    logarithmically."""


class StepSizeError(ValueError):
    """Explicit relaxation step too large for the damping rate."""


class NoBistabilityError(RuntimeError):
    """A switching-window quantity was requested at parameters whose drive
    curve is monotone (no fold points)."""


class RootScanError(RuntimeError):
    """The steady-state scan failed to bracket any root.  Cannot happen for
    a positive drive by continuity, so this signals an internal fault."""


class InductanceDivergenceError(ValueError):
    """SQUID inductance denominator reached zero or below at the requested
    operating point."""
