"""Exception hierarchy for geodkit."""

from typing import Any, Dict, List, Optional, Tuple


class GeodkitError(Exception):
    """Base class for every error raised by geodkit."""


class BracketError(GeodkitError):
    """A floor, ceiling or comparison could not be decided.

    Attributes:
        kind: Either ``"undecidable-floor"`` or ``"precision-exhausted"``
        context: Description of the failing argument
    """

    KINDS = ("undecidable-floor", "precision-exhausted")

    def __init__(self, kind: str, context: str) -> None:
        if kind not in self.KINDS:
            raise ValueError(f"Unknown bracket error kind: {kind}")
        self.kind = kind
        self.context = context
        super().__init__(f"{kind}: {context}")


class ClassificationError(GeodkitError):
    """Eigenvalue clusters or Jordan structure could not be separated at the tolerance."""

    def __init__(self, message: str, warnings: Optional[List[str]] = None) -> None:
        self.warnings = list(warnings or [])
        super().__init__(message)


class ModelError(GeodkitError, ValueError):
    """Invalid geodesic model, normal form or table."""


class PreconditionError(GeodkitError, ValueError):
    """A precondition of a search or check does not hold.

    Attributes:
        model_index: Position of the failing model in the input list, if any
    """

    def __init__(self, message: str, model_index: Optional[int] = None) -> None:
        self.model_index = model_index
        if model_index is not None:
            message = f"model {model_index}: {message}"
        super().__init__(message)


class JumpSearchError(GeodkitError):
    """No common index jump certificate exists in the searched range."""

    def __init__(self, n_min: int, n_max: int, m0: int) -> None:
        self.n_min = n_min
        self.n_max = n_max
        self.m0 = m0
        super().__init__(
            f"no certificate with {m0} | N in [{n_min}, {n_max}]; raise --n-max and retry"
        )


class WindowIntrusionError(GeodkitError):
    """An iterate other than the three adjacent ones lands in the index window.

    Attributes:
        counts: The window count record showing the intrusion
    """

    def __init__(self, counts: Any) -> None:
        self.counts = counts
        super().__init__(f"window [{counts.lower}, {counts.upper}] intruded: {counts.intrusions}")


class InputFileError(GeodkitError, ValueError):
    """A model or matrix file could not be parsed.

    Attributes:
        location: ``"line L, column C"`` or a dotted field path
    """

    def __init__(self, message: str, location: Optional[str] = None, source: str = "") -> None:
        self.location = location
        self.source = source
        where = ", ".join(part for part in (source, location) if part)
        super().__init__(f"{where}: {message}" if where else message)

    @classmethod
    def from_validation(
        cls, error: Any, source: str = "", prefix: Tuple[Any, ...] = ()
    ) -> "InputFileError":
        """Build from a pydantic ``ValidationError``, keeping the first failing field path."""
        details: List[Dict[str, Any]] = error.errors()
        first = details[0] if details else {"loc": (), "msg": str(error)}
        location = ".".join(str(part) for part in (*prefix, *first["loc"])) or None
        return cls(first["msg"], location, source)
