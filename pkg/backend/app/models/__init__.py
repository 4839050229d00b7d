"""Data models for NPN classification."""

from .truth_table import TruthTable, NpnTransform
from .canonical import (
    CanonicalResult,
    Method,
    SignatureVector,
    StageCounters,
    SymmetryPolicy,
)
from .classify import ClassEntry, ClassMap, ItemError, RunStats
from .aig import Aig, AndGate, Cut
from .errors import (
    AigerError,
    InvariantViolation,
    MethodError,
    NpnError,
    TransformError,
    TruthTableError,
)

__all__ = [
    "TruthTable",
    "NpnTransform",
    "CanonicalResult",
    "Method",
    "SignatureVector",
    "StageCounters",
    "SymmetryPolicy",
    "ClassEntry",
    "ClassMap",
    "ItemError",
    "RunStats",
    "Aig",
    "AndGate",
    "Cut",
    "AigerError",
    "InvariantViolation",
    "MethodError",
    "NpnError",
    "TransformError",
    "TruthTableError",
]
