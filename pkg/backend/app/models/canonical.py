"""
Canonical-form models: methods, pipeline state, stage counters and results.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

from app.models.errors import InvariantViolation
from app.models.truth_table import NpnTransform, TruthTable


class Method(str, Enum):
    """Canonicalization methods, named by their CLI spelling."""
    HYBRID = "inf"
    OPTIMIZED = "inf-plus"
    BASELINE_NO_INF = "baseline"
    EXHAUSTIVE = "exhaustive"


class SymmetryPolicy(str, Enum):
    """How symmetric variable classes prune phase and permutation enumeration."""
    EXACT = "exact"
    REPRESENTATIVE = "representative"


STAGES = ("polarity", "cofactor", "symmetry", "influence", "phase_selection", "final_enumeration")


class StageCounters(BaseModel):
    """
    Remaining enumeration counts after each pruning stage.

    Phase and permutation counts describe one polarity candidate (both
    candidates share them); the last two fields are summed over candidates.
    """
    polarity_candidates: int = Field(default=0, ge=0)
    phase_after_cof: int = Field(default=0, ge=0)
    phase_after_sym: int = Field(default=0, ge=0)
    perm_after_cof: int = Field(default=0, ge=0)
    perm_after_sym: int = Field(default=0, ge=0)
    perm_after_inf: int = Field(default=0, ge=0)
    phase_candidates_selected: int = Field(default=0, ge=0)
    final_enumerations: int = Field(default=0, ge=0)

    @property
    def remaining_after_sym(self) -> int:
        """Phase x permutation enumerations left once symmetry is collapsed."""
        return self.phase_after_sym * self.perm_after_sym

    def __add__(self, other: "StageCounters") -> "StageCounters":
        return StageCounters(**{
            name: getattr(self, name) + getattr(other, name)
            for name in StageCounters.model_fields
        })

    def check(self) -> None:
        """
        Raises:
            InvariantViolation: a later stage left more work than an earlier one
        """
        pairs = (
            ("phase_after_sym", "phase_after_cof"),
            ("perm_after_sym", "perm_after_cof"),
            ("perm_after_inf", "perm_after_sym"),
        )
        for later, earlier in pairs:
            if getattr(self, later) > getattr(self, earlier):
                raise InvariantViolation(
                    f"{later}={getattr(self, later)} exceeds {earlier}={getattr(self, earlier)}"
                )


@dataclass(frozen=True, slots=True, order=True)
class SignatureVector:
    """
    Concatenated signature blocks; the total order that defines canonicity.

    The truth table is the last element, compared as an integer.
    """
    values: tuple[int, ...]
    method: Method = field(compare=False, default=Method.OPTIMIZED)

    def __reduce__(self):
        return (self.__class__, (self.values, self.method))

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class VarGroup:
    """
    Variables sharing every signature value computed so far.

    Attributes:
        key: Signature values shared by the members, compared ascending
        members: 0-based variable indices
        classes: Symmetry classes partitioning the members
    """
    key: tuple[int, ...]
    members: tuple[int, ...]
    classes: list[tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self):
        if not self.classes:
            self.classes = [(var,) for var in self.members]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class ClassificationState:
    """
    Working state of the pipeline for one output polarity.

    Attributes:
        n: Input count
        out_neg: Output polarity of this candidate
        bits: Table after output polarity and the phases fixed by cofactors
        phase_mask: Inputs negated by the cofactor stage
        u_phase: Inputs whose phase the cofactor stage could not decide
        groups: Ordered variable groups; positions are assigned group by group
        constant: The table is constant, so no transform changes it
    """
    n: int
    out_neg: bool
    bits: int
    phase_mask: int
    u_phase: tuple[int, ...]
    groups: list[VarGroup]
    constant: bool = False

    @property
    def u_perm(self) -> tuple[int, ...]:
        if self.constant:
            return ()
        return tuple(var for g in self.groups if len(g.classes) >= 2 for var in g.members)

    def variable_groups(self) -> list[list[int]]:
        """Groups as 1-based variable lists."""
        return [[var + 1 for var in g.members] for g in self.groups]

    def undetermined_phase(self) -> list[int]:
        return [var + 1 for var in self.u_phase]


@dataclass(frozen=True, slots=True)
class PhaseCandidate:
    """A phase-assigned table h and the data the final enumeration needs."""
    out_neg: bool
    phase: int
    bits: int
    cost: int
    prefix: tuple[int, ...]
    subgroups: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True, slots=True)
class CanonicalResult:
    """
    Canonical form of one function.

    Attributes:
        canonical: Canonical table of the NPN class
        witness: Transform taking the input function to `canonical`
        vector: Signature vector of `canonical`
        counters: Remaining enumeration counts per stage
        method: Method that produced the result
        timings: Seconds spent per pipeline stage
        group_sizes: Sizes of the final variable groups
    """
    canonical: TruthTable
    witness: NpnTransform
    vector: SignatureVector
    counters: StageCounters
    method: Method
    timings: dict[str, float] = field(default_factory=dict)
    group_sizes: tuple[int, ...] = ()

    def __reduce__(self):
        return (
            self.__class__,
            (self.canonical, self.witness, self.vector, self.counters,
             self.method, self.timings, self.group_sizes),
        )

    def with_witness(self, witness: NpnTransform, timings: Optional[dict[str, float]] = None) -> "CanonicalResult":
        return CanonicalResult(
            self.canonical, witness, self.vector, self.counters, self.method,
            self.timings if timings is None else timings, self.group_sizes,
        )
