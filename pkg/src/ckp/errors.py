class CkpError(Exception):
    """Base class for every error raised by this package."""


class InstanceError(CkpError, ValueError):
    """An instance (or instance file) violates the data format."""


class InstanceTooLarge(CkpError):
    """An exhaustive oracle was asked to enumerate beyond its guard."""


class InfeasibleReducedLP(CkpError):
    """The reduced two-constraint LP has no feasible point."""


class BenchMismatch(CkpError):
    """Two solvers reported different optima for the same instance."""
