"""
Word-parallel helpers for packed truth tables.

A table over n variables is a Python int of 2**n bits. Bit m holds the
function value at the assignment whose binary value is m, so variable
x1 (index 0 here) is the least-significant bit of the minterm index.
All helpers take 0-based variable indices.
"""
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

MAX_INPUTS = 16


@lru_cache(maxsize=None)
def full_mask(n: int) -> int:
    """All 2**n table bits set."""
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def var_mask(n: int, i: int) -> int:
    """
    Elementary truth table of variable i.

    Args:
        n: Input count of the table
        i: 0-based variable index, i < n

    Returns:
        Mask of the minterms in which variable i is 1
    """
    span = 1 << i
    repeat = full_mask(n) // ((1 << (2 * span)) - 1)
    return repeat * (((1 << span) - 1) << span)


@lru_cache(maxsize=None)
def weight_masks(n: int) -> tuple[int, ...]:
    """
    Masks of minterms grouped by weight (count of positive variables).

    Entry w selects every minterm with exactly w variables set to 1.
    """
    if n == 0:
        return (1,)
    lower = weight_masks(n - 1)
    shift = 1 << (n - 1)
    masks = []
    for w in range(n + 1):
        low = lower[w] if w < len(lower) else 0
        high = lower[w - 1] << shift if w >= 1 else 0
        masks.append(low | high)
    return tuple(masks)


@lru_cache(maxsize=None)
def _swap_mask(n: int, i: int, j: int) -> int:
    return var_mask(n, i) & (full_mask(n) ^ var_mask(n, j))


def negate_var(bits: int, n: int, i: int) -> int:
    """Table of f with input i negated: exchanges the two cofactor halves."""
    span = 1 << i
    mask = var_mask(n, i)
    return ((bits & mask) >> span) | ((bits << span) & mask)


def negate_vars(bits: int, n: int, phase: int) -> int:
    """Apply an input-negation mask (bit i set = negate input i)."""
    i = 0
    while phase:
        if phase & 1:
            bits = negate_var(bits, n, i)
        phase >>= 1
        i += 1
    return bits


def swap_vars(bits: int, n: int, i: int, j: int) -> int:
    """
    Exchange inputs i and j with a single delta swap.

    The result r satisfies r(x) = f(x with x_i and x_j exchanged).
    """
    if i == j:
        return bits
    if i > j:
        i, j = j, i
    shift = (1 << j) - (1 << i)
    delta = ((bits >> shift) ^ bits) & _swap_mask(n, i, j)
    return bits ^ delta ^ (delta << shift)


def permute_vars(bits: int, n: int, perm: Sequence[int]) -> int:
    """
    Permute inputs so that h(x) = f(y) with y_i = x_perm[i].

    Input i of f ends up at position perm[i]. Built from at most n-1
    delta swaps.
    """
    target = [0] * n
    for var, pos in enumerate(perm):
        target[pos] = var
    current = list(range(n))
    where = list(range(n))
    for pos in range(n):
        var = target[pos]
        k = where[var]
        if k == pos:
            continue
        bits = swap_vars(bits, n, pos, k)
        other = current[pos]
        current[pos], current[k] = var, other
        where[var], where[other] = pos, k
    return bits


def move_var_to_top(bits: int, n: int, i: int) -> int:
    """Rotate input i to position n-1; inputs above i shift down by one."""
    for k in range(i, n - 1):
        bits = swap_vars(bits, n, k, k + 1)
    return bits


def cofactor_bits(bits: int, n: int, i: int, positive: bool) -> int:
    """(n-1)-input table of f with input i fixed to 1 (positive) or 0."""
    rotated = move_var_to_top(bits, n, i)
    half = 1 << (n - 1)
    if positive:
        return rotated >> half
    return rotated & ((1 << half) - 1)


def multinomial(sizes: Iterable[int]) -> int:
    """Number of distinct arrangements of a multiset with the given multiplicities."""
    sizes = list(sizes)
    count = factorial(sum(sizes))
    for size in sizes:
        count //= factorial(size)
    return count
