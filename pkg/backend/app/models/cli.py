"""
Validated command-line configuration.
"""
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field

from app.models.canonical import Method, SymmetryPolicy


class CliConfig(BaseModel):
    """Flags merged over settings; built before any file is opened."""
    command: str
    method: Method = Method.OPTIMIZED
    methods: list[Method] = Field(default_factory=list)
    symmetry_policy: SymmetryPolicy = SymmetryPolicy.EXACT
    inputs: Optional[int] = Field(None, ge=0, le=16)
    sers_base: int = Field(3, ge=2)
    cut_size: int = Field(8, ge=2, le=16)
    cut_limit: int = Field(64, ge=1)
    jobs: int = Field(1, ge=1)
    seed: int = 20240101
    exhaustive_cap: int = Field(6, ge=1, le=16)
    samples: int = Field(0, ge=0)
    exhaustive: bool = False
    dedupe: bool = False
    stats: bool = False
    source: Optional[str] = None
    out: Optional[Path] = None
    report: Optional[Path] = None
    host: str = "0.0.0.0"
    port: int = Field(8000, ge=1, le=65535)
