"""Exception hierarchy shared by every module."""

from __future__ import annotations


class EdgeRegError(Exception):
    """Base class for all library errors."""


class UnknownVertex(EdgeRegError, KeyError):
    pass


class VertexNameCollision(EdgeRegError, ValueError):
    pass


class NotVeryWellCovered(EdgeRegError, ValueError):
    pass


class InvalidLabeling(EdgeRegError, ValueError):
    pass


class BudgetExceeded(EdgeRegError, RuntimeError):
    """A configured desk-scale cap was exceeded.

    ``budget`` names the cap (e.g. ``"vertices"``) so callers can report it.
    """

    def __init__(self, budget: str, limit: int, actual: int | None = None):
        self.budget = budget
        self.limit = limit
        self.actual = actual
        msg = f"budget '{budget}' exceeded: limit {limit}"
        if actual is not None:
            msg += f", got {actual}"
        super().__init__(msg)


class RingMismatch(EdgeRegError, ValueError):
    pass


class NotSquarefree(EdgeRegError, ValueError):
    pass


class ZeroIdeal(EdgeRegError, ValueError):
    pass


class UnitIdeal(EdgeRegError, ValueError):
    pass


class ParseError(EdgeRegError, ValueError):
    pass


class VerificationFailure(EdgeRegError, AssertionError):
    """A sweep found a counterexample; ``records`` holds everything computed so far."""

    def __init__(self, message: str, records=None, fixture_path=None):
        super().__init__(message)
        self.records = list(records or [])
        self.fixture_path = fixture_path


class NotAnEdge(EdgeRegError, ValueError):
    """A product factor is not an edge of the base graph."""
