"""
Request and response models of the HTTP API.
"""
from typing import Optional

from pydantic import BaseModel, Field

from app.models.canonical import Method, StageCounters, SymmetryPolicy
from app.models.classify import ItemError, RunStats


class CanonRequest(BaseModel):
    """Tables to canonicalize."""
    functions: list[str] = Field(..., min_length=1, description="Hex (or binary, n < 2) truth tables")
    inputs: Optional[int] = Field(None, ge=0, le=16, description="Input count; inferred when omitted")
    method: Method = Method.OPTIMIZED
    symmetry_policy: SymmetryPolicy = SymmetryPolicy.EXACT
    sers_base: int = Field(3, ge=2)


class CanonItem(BaseModel):
    input_hex: str
    canonical_hex: str
    out_neg: str
    phase_mask_hex: str
    perm: str
    counters: StageCounters


class CanonResponse(BaseModel):
    method: Method
    results: list[CanonItem]
    errors: list[ItemError] = Field(default_factory=list)


class ClassRow(BaseModel):
    """One row of the class CSV."""
    canonical_hex: str
    count: int
    representative_hex: str
    out_neg: str
    phase_mask_hex: str
    perm: str


class ClassifyResponse(BaseModel):
    classes: list[ClassRow]
    stats: RunStats
    errors: list[ItemError] = Field(default_factory=list)


class CutsResponse(BaseModel):
    """Extracted cut functions, in the order the enumerator emits them."""
    cut_size: int
    cut_limit: int
    count: int
    functions: list[str]
    inputs: list[int] = Field(default_factory=list, description="Input count of each function")
