"""Structured errors shared across the toolkit."""

from __future__ import annotations

from typing import Any


class ToolkitError(Exception):
    """Base class; carries a stable machine-readable code and a witness payload."""

    def __init__(self, code: str, message: str, witness: dict[str, Any] | None = None):
        super().__init__(message)
        self.code = code
        self.witness = witness if witness is not None else {}

    def as_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": str(self), "witness": self.witness}


class FormatError(ToolkitError):
    """Malformed input text (category, band table, or functor map)."""


class LawError(ToolkitError):
    """A finite structure violates one of its defining laws."""


class SizeLimitError(ToolkitError):
    """Input exceeds the configured exhaustive-search bounds."""


class UnsupportedError(ToolkitError):
    """Operation is defined but deliberately refused for this input."""


class InternalCheckError(ToolkitError):
    """An internal cross-check failed; signals a bug or a broken presentation."""
