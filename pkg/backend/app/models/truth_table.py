"""
Truth-table and NPN-transform value types.

Both are frozen, slotted and hashable.
"""
from dataclasses import dataclass

from app.models.errors import TransformError, TruthTableError
from app.utils.bits import MAX_INPUTS, full_mask


@dataclass(frozen=True, slots=True)
class TruthTable:
    """
    Complete single-output Boolean function of n inputs.

    Attributes:
        n: Input count (0..16; 0 only arises from cofactoring a 1-input table)
        bits: Packed table, bit m = f(X_m) with x1 the least-significant index bit
    """
    n: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_INPUTS:
            raise TruthTableError(f"input count {self.n} outside 0..{MAX_INPUTS}")
        if self.bits < 0 or self.bits > full_mask(self.n):
            raise TruthTableError(f"table bits exceed 2^{self.n} positions")

    @property
    def size(self) -> int:
        return 1 << self.n

    def __str__(self) -> str:
        from app.services.truth_table import to_hex
        return to_hex(self)

    def __reduce__(self):
        return (self.__class__, (self.n, self.bits))


@dataclass(frozen=True, slots=True)
class NpnTransform:
    """
    Element of the NPN group acting on n-input tables.

    (t·f)(x) = out_neg XOR f(y) with y_i = x_perm[i] XOR phase_i.

    Attributes:
        out_neg: Output negation
        phase: Input-negation mask, bit i set = input i negated
        perm: 0-based permutation, perm[i] is the position feeding input i
    """
    out_neg: bool
    phase: int
    perm: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise TransformError(f"not a permutation: {self.perm}")
        if self.phase < 0 or self.phase >> n:
            raise TransformError(f"phase mask {self.phase:#x} has bits above input {n}")

    @property
    def n(self) -> int:
        return len(self.perm)

    def __reduce__(self):
        return (self.__class__, (self.out_neg, self.phase, self.perm))

    @classmethod
    def identity(cls, n: int) -> "NpnTransform":
        return cls(False, 0, tuple(range(n)))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "NpnTransform":
        """Pure permutation exchanging 0-based inputs i and j."""
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        return cls(False, 0, tuple(perm))

    def perm_text(self) -> str:
        """1-based permutation joined by '-', e.g. '2-1-3'."""
        return "-".join(str(p + 1) for p in self.perm)

    def phase_text(self) -> str:
        return f"{self.phase:X}"

    def to_fields(self) -> tuple[str, str, str]:
        """(out_neg, phase_mask_hex, perm) as emitted in text reports."""
        return ("1" if self.out_neg else "0", self.phase_text(), self.perm_text())

    @classmethod
    def from_fields(cls, out_neg: str, phase: str, perm: str) -> "NpnTransform":
        try:
            order = tuple(int(p) - 1 for p in perm.split("-")) if perm else ()
            return cls(out_neg.strip() == "1", int(phase, 16), order)
        except ValueError as e:
            raise TransformError(f"malformed transform fields: {e}") from e
