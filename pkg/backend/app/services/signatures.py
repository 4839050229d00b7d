"""
Signature computation: cofactor, influence, row sums, shifted cofactor
and permutation cost.

The ``*_counts`` helpers work on raw table ints with 0-based variables and
feed the canonical-form pipeline; the public functions take TruthTable and
1-based variable indices.
"""
from math import factorial
from typing import Sequence

from app.models.errors import TruthTableError
from app.models.signatures import (
    CofactorSignature,
    InfluenceSignature,
    PermutationCost,
    RowSums,
    ShiftedCofactorSignature,
    SignatureCombination,
    SignatureReport,
)
from app.models.truth_table import TruthTable
from app.services.truth_table import to_hex
from app.utils.bits import cofactor_bits, full_mask, negate_var, var_mask, weight_masks


def cofactor_counts(bits: int, n: int) -> tuple[int, ...]:
    """|f_xi| for every input."""
    return tuple((bits & var_mask(n, i)).bit_count() for i in range(n))


def influence_counts(bits: int, n: int) -> tuple[int, ...]:
    """Pair count of the Boolean difference along every input."""
    full = full_mask(n)
    counts = []
    for i in range(n):
        low = full ^ var_mask(n, i)
        counts.append(((bits ^ (bits >> (1 << i))) & low).bit_count())
    return tuple(counts)


def sers_value(bits: int, n: int, base: int) -> int:
    """Sum over satisfied minterms of base ** weight."""
    return sum((bits & mask).bit_count() * base ** w for w, mask in enumerate(weight_masks(n)))


def shifted_cofactor_counts(bits: int, n: int, base: int) -> tuple[int, ...]:
    """
    SERS of each positive cofactor, without materializing the cofactors.

    A minterm of f_xi with weight w is a minterm of f with x_i = 1 and
    weight w + 1.
    """
    masks = weight_masks(n)
    powers = [base ** w for w in range(n)]
    values = []
    for i in range(n):
        upper = bits & var_mask(n, i)
        values.append(sum((upper & masks[w + 1]).bit_count() * powers[w] for w in range(n)))
    return tuple(values)


def _check_var(f: TruthTable, i: int) -> None:
    if not 1 <= i <= f.n:
        raise TruthTableError(f"variable x{i} outside x1..x{f.n}")


def _check_base(base: int) -> None:
    if base < 2:
        raise TruthTableError(f"SERS base must be at least 2, got {base}")


def cofactor_signature(f: TruthTable) -> CofactorSignature:
    """S_cof = (|f|, |f_x1|, ..., |f_xn|)."""
    return CofactorSignature(total=f.bits.bit_count(), per_var=cofactor_counts(f.bits, f.n))


def influence(f: TruthTable, i: int) -> int:
    """Number of axis-i minterm pairs on which f differs."""
    _check_var(f, i)
    return influence_counts(f.bits, f.n)[i - 1]


def influence_signature(f: TruthTable) -> InfluenceSignature:
    return InfluenceSignature(per_var=influence_counts(f.bits, f.n))


def difference_table(f: TruthTable, i: int) -> TruthTable:
    """(n-1)-input table of f_xi XOR f_!xi."""
    _check_var(f, i)
    positive = cofactor_bits(f.bits, f.n, i - 1, True)
    negative = cofactor_bits(f.bits, f.n, i - 1, False)
    return TruthTable(f.n - 1, positive ^ negative)


def row_sums(f: TruthTable) -> RowSums:
    weights: list[int] = []
    ssrs = 0
    for w, mask in enumerate(weight_masks(f.n)):
        count = (f.bits & mask).bit_count()
        weights.extend([w] * count)
        ssrs += count * w * w
    return RowSums(weights=tuple(weights), ssrs=ssrs)


def sers(f: TruthTable, base: int = 3) -> int:
    """Sum of exponential row sums (0th-order shifted-cofactor signature)."""
    _check_base(base)
    return sers_value(f.bits, f.n, base)


def shifted_cofactor_signature(f: TruthTable, base: int = 3) -> ShiftedCofactorSignature:
    _check_base(base)
    return ShiftedCofactorSignature(
        base=base,
        order0=sers_value(f.bits, f.n, base),
        order1=shifted_cofactor_counts(f.bits, f.n, base),
    )


def permutation_cost(groups: Sequence[int]) -> PermutationCost:
    """Product of factorials of the permutation-undetermined group sizes."""
    value = 1
    for size in groups:
        if size < 1:
            raise ValueError(f"group size must be positive, got {size}")
        value *= factorial(size)
    return PermutationCost(value=value)


def adjusted_cofactors(bits: int, n: int) -> tuple[int, ...]:
    """min(|f_xi|, |f| - |f_xi|): the cofactor value under the smaller phase."""
    total = bits.bit_count()
    return tuple(min(c, total - c) for c in cofactor_counts(bits, n))


def variable_grouping(
    f: TruthTable,
    combination: SignatureCombination = SignatureCombination.COFACTOR_INFLUENCE,
    base: int = 3,
) -> list[list[int]]:
    """
    Partition x1..xn into groups of equal signature values.

    Cofactor values are phase-adjusted; the shifted-cofactor value of a
    variable is taken under the phase that realizes its adjusted cofactor.
    Groups are ordered by their signature tuple, members by index.

    Returns:
        Groups of 1-based variable indices
    """
    _check_base(base)
    n = f.n
    total = f.bits.bit_count()
    raw = cofactor_counts(f.bits, n)
    adjusted = [min(c, total - c) for c in raw]
    keys: list[list[int]] = [[a] for a in adjusted]

    if combination in (SignatureCombination.COFACTOR_SCC, SignatureCombination.ALL):
        phase_bits = f.bits
        for i, c in enumerate(raw):
            if 2 * c > total:
                phase_bits = negate_var(phase_bits, n, i)
        scc = shifted_cofactor_counts(phase_bits, n, base)
        for i in range(n):
            keys[i].append(scc[i])
    if combination in (SignatureCombination.COFACTOR_INFLUENCE, SignatureCombination.ALL):
        inf = influence_counts(f.bits, n)
        for i in range(n):
            keys[i].append(inf[i])

    buckets: dict[tuple[int, ...], list[int]] = {}
    for i in range(n):
        buckets.setdefault(tuple(keys[i]), []).append(i + 1)
    return [buckets[key] for key in sorted(buckets)]


def signature_report(f: TruthTable, base: int = 3) -> SignatureReport:
    """Every signature family of f plus its grouping under each combination."""
    return SignatureReport(
        hex=to_hex(f),
        n=f.n,
        cofactor=cofactor_signature(f),
        influence=influence_signature(f),
        row_sums=row_sums(f),
        shifted_cofactor=shifted_cofactor_signature(f, base),
        groupings={
            combination.value: variable_grouping(f, combination, base)
            for combination in SignatureCombination
        },
    )
