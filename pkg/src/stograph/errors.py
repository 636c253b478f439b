"""Exception types shared across the package."""

from __future__ import annotations


class StographError(Exception):
    """Base class for all package-specific errors."""


class UnknownVertexError(StographError, KeyError):
    """A vertex id outside the window was referenced."""


class FrontierError(StographError, ValueError):
    """An operation that requires an interior vertex was given a frontier one."""


class DisconnectedWindowError(StographError, ValueError):
    """A rooted operation found vertices unreachable from the root."""


class ProfileConsistencyError(StographError, ValueError):
    """A radial profile violates the sphere/edge double-counting identity."""

    def __init__(self, radius: int, message: str):
        super().__init__(message)
        self.radius = radius


class NotRealizableError(StographError, ValueError):
    """A profile cannot be materialized by the complete-join pattern."""


class BoundedDegreeRedirect(StographError, ValueError):
    """Input proven to have bounded weighted degree; use the bounded-degree test."""


class HypothesisNotEstablished(StographError, ValueError):
    """A series convergence/divergence hypothesis required by a criterion failed."""


class OracleError(StographError, RuntimeError):
    """Internal inconsistency in the numerical oracle (solver or nesting bug)."""


class GraphFormatError(StographError, ValueError):
    """Graph file syntax or validation error."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ProfileFormatError(StographError, ValueError):
    """Profile file syntax or consistency error."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class VerdictConflictError(StographError, RuntimeError):
    """Two non-Unknown verdicts disagree; indicates a bug, never a valid state."""
