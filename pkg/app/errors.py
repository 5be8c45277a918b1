"""
Exception types shared by the numerical packages and the command line.

Every numerical failure derives from LauricellaError so callers that batch
work (the solver, the verification suite) can isolate one failed item and
carry on. ConfigError is kept apart: it is raised before any numerics run.
"""


class LauricellaError(Exception):
    """Base class for numerical failures."""


class ParameterPole(LauricellaError):
    """A gamma argument or a denominator parameter sits on a pole."""


class NonConvergence(LauricellaError):
    """A series hit its degree cap before meeting the tolerance."""


class OutsideDomain(LauricellaError):
    """No certified evaluation path exists for the given arguments."""


class PreconditionError(LauricellaError, ValueError):
    """Inputs violate a stated precondition or type invariant."""


class CoincidentPoints(LauricellaError):
    """The kernel was asked for a value on its diagonal."""


class StencilOutOfDomain(LauricellaError):
    """A finite-difference stencil would cross a singular hyperplane."""


class QuadratureNotConverged(LauricellaError):
    """Successive refinement levels disagree by more than the target."""


class UncertifiedDatum(LauricellaError):
    """Boundary data violate their declared far-field bound."""


class BudgetExhausted(LauricellaError):
    """A verification oracle ran out of its evaluation budget."""


class GridTooCoarse(LauricellaError):
    """Two grid resolutions disagree by more than half the tolerance."""


class ConfigError(Exception):
    """Invalid run configuration; ``path`` names the offending field."""

    def __init__(self, path: str, message: str, line: int | None = None):
        self.path = path
        self.message = message
        self.line = line
        where = path if line is None else f"{path} (line {line})"
        super().__init__(f"{where}: {message}")
