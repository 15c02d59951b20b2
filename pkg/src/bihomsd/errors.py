"""Exception types shared across the engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(EngineError):
    """Two values or containers from different scalar fields were combined."""


class DimensionError(EngineError):
    """Shapes of matrices, vectors or tensors do not line up."""


class DependenceError(EngineError):
    """A vector list expected to be independent is not."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"vector {index} depends on the preceding ones")


class SingularMapError(EngineError):
    """A map that must be invertible is singular."""


class NonCommutingError(EngineError):
    """Two maps that must commute do not."""


class SchemaError(EngineError):
    """An instance file violates the JSON schema."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")


class PreconditionError(EngineError):
    """A construction was invoked on inputs violating a named hypothesis."""

    def __init__(self, name: str, witness: tuple = (), detail: str = ""):
        self.name = name
        self.witness = witness
        text = f"precondition '{name}' failed"
        if witness:
            text += f" at {witness}"
        if detail:
            text += f": {detail}"
        super().__init__(text)


class SearchBoundError(EngineError):
    """A brute-force enumeration would exceed its configured bound."""
