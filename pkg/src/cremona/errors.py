"""Typed domain errors.

Every error carries a stable ``code`` used by the CLI's JSON error objects.
"""

from __future__ import annotations


class CremonaError(Exception):
    code = "CremonaError"

    def __init__(self, message: str = "", **details: object) -> None:
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details

    def to_json(self) -> dict[str, object]:
        out: dict[str, object] = {"error": self.code, "message": self.message}
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(value: object) -> object:
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


class InvalidInput(CremonaError):
    """Malformed or contradictory arguments."""

    code = "InvalidInput"


class InvalidCluster(CremonaError):
    """Cluster structure or proximity inequality violated."""

    code = "InvalidCluster"


class NotHomaloidal(CremonaError):
    """Type fails the degree/multiplicity identities."""

    code = "NotHomaloidal"


class NotApplicable(CremonaError):
    """Operation undefined for this input (e.g. n = 1)."""

    code = "NotApplicable"


class InvalidState(CremonaError):
    """Marked system violates integrality or conservation identities."""

    code = "InvalidState"


class WrongSurface(CremonaError):
    """Link applied on a surface where it is undefined."""

    code = "WrongSurface"


class NotProperPoint(CremonaError):
    """Link center is not a root (proper) point."""

    code = "NotProperPoint"


class InvalidContraction(CremonaError):
    """Contraction to the plane is not possible."""

    code = "InvalidContraction"


class SpecialPosition(CremonaError):
    """Configuration outside the general-position contract."""

    code = "SpecialPosition"


class InvalidComposition(CremonaError):
    """Quadratic composition produces no valid type."""

    code = "InvalidComposition"


class InvalidTrace(CremonaError):
    """Trace does not replay to the expected states."""

    code = "InvalidTrace"


class InternalInvariantViolation(CremonaError):
    """An engine assertion failed; indicates a bug."""

    code = "InternalInvariantViolation"


class DegenerateComposition(CremonaError):
    """Composite map vanishes identically."""

    code = "DegenerateComposition"


class NonRationalBasePoint(CremonaError):
    """A base point is not defined over Q."""

    code = "NonRationalBasePoint"


class InfinitelyNearOrIrrational(CremonaError):
    """Extracted proper rational base points do not satisfy the homaloidal identities."""

    code = "InfinitelyNearOrIrrational"


class CorpusGenerationFailed(CremonaError):
    """Retry budget exhausted."""

    code = "CorpusGenerationFailed"


__all__ = [
    "CremonaError",
    "InvalidInput",
    "InvalidCluster",
    "NotHomaloidal",
    "NotApplicable",
    "InvalidState",
    "WrongSurface",
    "NotProperPoint",
    "InvalidContraction",
    "SpecialPosition",
    "InvalidComposition",
    "InvalidTrace",
    "InternalInvariantViolation",
    "DegenerateComposition",
    "NonRationalBasePoint",
    "InfinitelyNearOrIrrational",
    "CorpusGenerationFailed",
]
