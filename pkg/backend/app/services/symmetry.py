"""
Pairwise (non-equivalence) variable symmetry.

Swap-symmetry is an equivalence relation: if swapping (a, b) and (b, c)
both fix f, so does their conjugate (a, c). Classes are therefore built by
testing each variable against class leaders only.
"""
from typing import Sequence

from app.models.errors import TruthTableError
from app.models.truth_table import TruthTable
from app.utils.bits import swap_vars


def symmetric_bits(bits: int, n: int, i: int, j: int) -> bool:
    """0-based symmetry test on a raw table."""
    return swap_vars(bits, n, i, j) == bits


def symmetry_classes(bits: int, n: int, group: Sequence[int]) -> list[tuple[int, ...]]:
    """
    Split a variable group into symmetry classes (0-based).

    Classes keep the order of their leaders in `group`; members keep
    group order.
    """
    classes: list[list[int]] = []
    for var in group:
        for members in classes:
            if symmetric_bits(bits, n, members[0], var):
                members.append(var)
                break
        else:
            classes.append([var])
    return [tuple(members) for members in classes]


def is_symmetric(f: TruthTable, i: int, j: int) -> bool:
    """
    True iff swapping x_i and x_j leaves f unchanged.

    Raises:
        TruthTableError: i == j or an index outside 1..n
    """
    if i == j:
        raise TruthTableError("symmetry is tested between two distinct variables")
    for k in (i, j):
        if not 1 <= k <= f.n:
            raise TruthTableError(f"variable x{k} outside x1..x{f.n}")
    return symmetric_bits(f.bits, f.n, i - 1, j - 1)


def detect_symmetry(f: TruthTable, group: Sequence[int]) -> list[list[int]]:
    """
    Symmetry classes of a group of 1-based variables.

    Returns:
        Ordered classes of mutually symmetric variables; their union is `group`
    """
    for k in group:
        if not 1 <= k <= f.n:
            raise TruthTableError(f"variable x{k} outside x1..x{f.n}")
    classes = symmetry_classes(f.bits, f.n, [k - 1 for k in group])
    return [[k + 1 for k in members] for members in classes]
