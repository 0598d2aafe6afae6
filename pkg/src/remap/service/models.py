"""Response envelope shared by every endpoint."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel


class ErrorInfo(BaseModel):
    code: str
    message: str


class QueryResponse(BaseModel):
    """Envelope: status, resolved-parameter echo, operation payload."""

    status: str  # "ok" | "error"
    params: dict[str, Any] = {}
    payload: dict[str, Any] | None = None
    error: ErrorInfo | None = None

    def to_wire(self) -> dict[str, Any]:
        """Envelope as a plain dict; absent sections dropped, payload
        nulls (undefined values) preserved verbatim."""
        out: dict[str, Any] = {"status": self.status, "params": self.params}
        if self.payload is not None:
            out["payload"] = self.payload
        if self.error is not None:
            out["error"] = self.error.model_dump()
        return out
