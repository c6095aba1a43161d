"""Pydantic request and response models for the verification service."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

FORMAT_VERSION = 1


class Report(BaseModel):
    """Deterministic report: identical inputs produce identical reports
    (timing excluded when disabled)."""

    format_version: int = FORMAT_VERSION
    command: list[str]
    result: str  # pass | fail | error
    verdicts: dict[str, str] = Field(default_factory=dict)  # name -> pass | fail | unsupported
    witnesses: dict[str, Any] = Field(default_factory=dict)
    info: dict[str, Any] = Field(default_factory=dict)
    timing: float | None = None


class BaseRequest(BaseModel):
    timing: bool = True
    max_objects: int | None = None


class ValidateRequest(BaseRequest):
    category_text: str


class ProductRequest(BaseRequest):
    category_texts: list[str]
    emit: bool = False


class PretorsionRequest(BaseRequest):
    category_text: str
    torsion_subset: str
    free_subset: str


class CheckMorphismRequest(BaseRequest):
    source_text: str
    target_text: str
    functor_text: str
    source_torsion: str
    source_free: str
    target_torsion: str
    target_free: str


class BandRequest(BaseRequest):
    band_text: str


class EnumerateBandsRequest(BaseRequest):
    size: int


class EpiclassRequest(BaseRequest):
    category_text: str
    mode: Literal["explicit", "projections", "split", "regular", "minimal"] = "explicit"
    subset: str | None = None
