"""Exception types shared across modules."""

from __future__ import annotations


class Unsupported(Exception):
    """The computation falls outside the supported cases; ``reason`` says why."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NotSemistable(Unsupported):
    pass


class InternalInconsistency(AssertionError):
    """Two independent computations that must agree did not."""
