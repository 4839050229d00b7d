"""
Signature models returned by the signatures service and the HTTP API.
"""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class CofactorSignature(BaseModel):
    """Satisfy count and positive-cofactor satisfy counts."""
    model_config = ConfigDict(frozen=True)

    total: int = Field(..., ge=0, description="|f|")
    per_var: tuple[int, ...] = Field(..., description="|f_xi| for i = 1..n")


class InfluenceSignature(BaseModel):
    """Per-variable influence, the pair count of the Boolean difference."""
    model_config = ConfigDict(frozen=True)

    per_var: tuple[int, ...]


class ShiftedCofactorSignature(BaseModel):
    """Sum of exponential row sums of f (order 0) and of its positive cofactors (order 1)."""
    model_config = ConfigDict(frozen=True)

    base: int = Field(..., ge=2)
    order0: int = Field(..., ge=0)
    order1: tuple[int, ...]


class RowSums(BaseModel):
    """Sorted minterm weights of the satisfied minterms and their sum of squares."""
    model_config = ConfigDict(frozen=True)

    weights: tuple[int, ...]
    ssrs: int = Field(..., ge=0)


class PermutationCost(BaseModel):
    """Count of permutations the final enumeration would visit."""
    model_config = ConfigDict(frozen=True)

    value: int = Field(..., ge=1)


class SignatureCombination(str, Enum):
    """Signature families used to split variables into groups."""
    COFACTOR = "cofactor"
    COFACTOR_SCC = "cofactor+scc"
    COFACTOR_INFLUENCE = "cofactor+influence"
    ALL = "all"


class SignatureReport(BaseModel):
    """Every signature family of one function, as dumped by the CLI and API."""
    hex: str
    n: int
    cofactor: CofactorSignature
    influence: InfluenceSignature
    row_sums: RowSums
    shifted_cofactor: ShiftedCofactorSignature
    groupings: dict[str, list[list[int]]] = Field(
        default_factory=dict,
        description="Variable groups (1-based) per signature combination"
    )
