"""Exception types shared by the library and the command line front end."""

from __future__ import annotations


class MalformedInputError(ValueError):
    """A document or argument does not parse, or breaks a type invariant."""


class PreconditionError(ValueError):
    """An operation was called with inputs that violate its precondition.

    ``condition`` names the violated condition (for example ``"D4"`` or
    ``"A disjoint from B"``) so front ends can report it verbatim.
    """

    def __init__(self, message: str, condition: str | None = None):
        super().__init__(message)
        self.condition = condition
