"""
Truth-table text codec and the NPN group action.

Variable indices in this module's public functions are 1-based (x1..xn),
matching the notation of the hex format; the bit helpers underneath are
0-based.
"""
from typing import Optional

from app.models.errors import TransformError, TruthTableError
from app.models.truth_table import NpnTransform, TruthTable
from app.utils.bits import (
    MAX_INPUTS,
    cofactor_bits,
    full_mask,
    negate_vars,
    permute_vars,
    swap_vars,
)

_HEX_DIGITS = set("0123456789abcdefABCDEF")


def parse_hex(text: str, n: Optional[int] = None) -> TruthTable:
    """
    Parse a truth table from hex (n >= 2) or binary (n < 2) text.

    The leftmost hex digit holds minterms 2^n-1 .. 2^n-4. A leading
    ``0x`` is accepted; case is ignored.

    Args:
        text: Table text
        n: Input count; inferred from the digit count when omitted

    Returns:
        Parsed TruthTable

    Raises:
        TruthTableError: Malformed digits, a digit count that is not a
            power-of-two bit count, or an input count above 16
    """
    digits = text.strip()
    if digits[:2] in ("0x", "0X"):
        digits = digits[2:]
    if not digits:
        raise TruthTableError("empty truth table")

    if n is not None and not 0 <= n <= MAX_INPUTS:
        raise TruthTableError(f"input count {n} outside 0..{MAX_INPUTS}")

    if n is not None and n < 2:
        if len(digits) != 1 << n or set(digits) - {"0", "1"}:
            raise TruthTableError(f"expected {1 << n} binary digits for n={n}, got '{digits}'")
        return TruthTable(n, int(digits, 2))

    if set(digits) - _HEX_DIGITS:
        raise TruthTableError(f"malformed hex '{text.strip()}'")

    bit_count = 4 * len(digits)
    if bit_count & (bit_count - 1):
        raise TruthTableError(f"{len(digits)} hex digits is not a power-of-two bit count")
    inferred = bit_count.bit_length() - 1
    if n is None:
        if inferred > MAX_INPUTS:
            raise TruthTableError(f"inferred input count {inferred} exceeds {MAX_INPUTS}")
        n = inferred
    elif inferred != n:
        raise TruthTableError(f"expected {(1 << n) // 4} hex digits for n={n}, got {len(digits)}")

    return TruthTable(n, int(digits, 16))


def to_hex(f: TruthTable) -> str:
    """Uppercase hex, most-significant minterm first; binary text for n < 2."""
    if f.n < 2:
        return format(f.bits, f"0{1 << f.n}b")
    return format(f.bits, f"0{(1 << f.n) // 4}X")


def satisfy_count(f: TruthTable) -> int:
    """Number of minterms on which f is 1."""
    return f.bits.bit_count()


def _check_var(f: TruthTable, i: int) -> None:
    if not 1 <= i <= f.n:
        raise TruthTableError(f"variable x{i} outside x1..x{f.n}")


def cofactor(f: TruthTable, i: int, positive: bool) -> TruthTable:
    """
    Cofactor of f with x_i fixed to 1 (positive) or 0.

    The result has n-1 inputs; inputs above x_i shift down by one.
    """
    _check_var(f, i)
    return TruthTable(f.n - 1, cofactor_bits(f.bits, f.n, i - 1, positive))


def swap_variables(f: TruthTable, i: int, j: int) -> TruthTable:
    """f with inputs x_i and x_j exchanged."""
    _check_var(f, i)
    _check_var(f, j)
    return TruthTable(f.n, swap_vars(f.bits, f.n, i - 1, j - 1))


def transform_bits(bits: int, n: int, t: NpnTransform) -> int:
    """apply_transform on raw table bits; phase first, then permutation."""
    bits = negate_vars(bits, n, t.phase)
    bits = permute_vars(bits, n, t.perm)
    if t.out_neg:
        bits ^= full_mask(n)
    return bits


def apply_transform(f: TruthTable, t: NpnTransform) -> TruthTable:
    """
    Act on f with t: (t·f)(x) = out_neg XOR f(y), y_i = x_perm(i) XOR p_i.

    Raises:
        TransformError: t is sized for a different input count
    """
    if t.n != f.n:
        raise TransformError(f"transform for {t.n} inputs applied to a {f.n}-input table")
    return TruthTable(f.n, transform_bits(f.bits, f.n, t))


def compose(t2: NpnTransform, t1: NpnTransform) -> NpnTransform:
    """
    Transform equal to applying t1 first, then t2.

    apply_transform(f, compose(t2, t1)) == apply_transform(apply_transform(f, t1), t2)
    """
    if t1.n != t2.n:
        raise TransformError(f"cannot compose transforms over {t2.n} and {t1.n} inputs")
    perm = tuple(t2.perm[t1.perm[i]] for i in range(t1.n))
    phase = t1.phase
    for i in range(t1.n):
        if (t2.phase >> t1.perm[i]) & 1:
            phase ^= 1 << i
    return NpnTransform(t1.out_neg != t2.out_neg, phase, perm)


def invert(t: NpnTransform) -> NpnTransform:
    """Group inverse: compose(t, invert(t)) is the identity."""
    inverse = [0] * t.n
    for i, p in enumerate(t.perm):
        inverse[p] = i
    phase = 0
    for j in range(t.n):
        if (t.phase >> inverse[j]) & 1:
            phase |= 1 << j
    return NpnTransform(t.out_neg, phase, tuple(inverse))
