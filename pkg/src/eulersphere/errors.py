from __future__ import annotations


class SphereError(Exception):
    """Base error for every domain failure. `code` is stable and machine-readable."""

    code = "sphere_error"

    def __init__(self, message: str, *, code: str | None = None, **detail: object):
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code
        self.detail = detail

    def to_payload(self) -> dict:
        payload: dict = {"ok": False, "error": self.code, "message": self.message}
        if self.detail:
            payload["detail"] = {k: _jsonable(v) for k, v in sorted(self.detail.items())}
        return payload


class BudgetExceededError(SphereError):
    """A search cap or node budget ran out before an exact answer was reached."""

    code = "budget_exceeded"


class StructureError(SphereError):
    """A structural precondition on the input graph does not hold."""

    code = "structure_error"


def _jsonable(value: object) -> object:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)
