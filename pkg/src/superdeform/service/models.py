"""Request and response models for the verification service.

Rationals travel as exact "p/q" strings everywhere; floats are rejected by
the core parser.
"""
from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class CommandResponse(BaseModel):
    """Uniform envelope: the batch exit code plus the command payload."""

    exit_code: int
    payload: dict


class AlgebraRequest(BaseModel):
    seed: int = 0
    cases: int = Field(default=1000, ge=1)


class CocyclesRequest(BaseModel):
    d: Optional[str] = None
    m: Optional[int] = None
    k_range: str = "0..5"
    families: list[str] = Field(default_factory=list)
    workers: Optional[int] = None


class CupRelationsRequest(BaseModel):
    k_range: str = "1..3"


class NontrivialRequest(BaseModel):
    case: str
    k: int = 1
    d: Optional[str] = None
    m: Optional[int] = None
    bounds: Optional[int] = None
    weight_prune: bool = False


class DeformRequest(BaseModel):
    params: dict
    K: Optional[int] = None


class CatalogDumpRequest(BaseModel):
    family: str
    k: int = 0
    d: Optional[str] = None
