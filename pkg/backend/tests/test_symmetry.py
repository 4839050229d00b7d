from itertools import combinations
from random import Random

import pytest

from app.models.errors import TruthTableError
from app.models.truth_table import NpnTransform, TruthTable
from app.services.truth_table import apply_transform, swap_variables
from app.services.verifier import random_table
from app.services.symmetry import detect_symmetry, is_symmetric, symmetry_classes

# x1 AND (x2 OR x3)
GUARDED_OR = TruthTable(3, 0xA8)


def test_symmetric_functions():
    assert is_symmetric(TruthTable(2, 0x8), 1, 2)
    assert is_symmetric(TruthTable(3, 0xE8), 1, 3)


def test_asymmetric_pair():
    # x1 AND NOT x2
    assert not is_symmetric(TruthTable(2, 0x2), 1, 2)
    assert not is_symmetric(GUARDED_OR, 1, 2)
    assert is_symmetric(GUARDED_OR, 2, 3)


def test_half_split_table(half_split):
    assert is_symmetric(half_split, 3, 4)
    assert detect_symmetry(half_split, [1, 2, 3, 4]) == [[1], [2], [3, 4]]


def test_classes():
    assert detect_symmetry(TruthTable(3, 0x80), [1, 2, 3]) == [[1, 2, 3]]
    assert detect_symmetry(GUARDED_OR, [1, 2, 3]) == [[1], [2, 3]]
    assert detect_symmetry(GUARDED_OR, [3, 1]) == [[3], [1]]


def test_raw_classes_are_zero_based():
    assert symmetry_classes(GUARDED_OR.bits, 3, (0, 1, 2)) == [(0,), (1, 2)]


@pytest.mark.parametrize("i, j", [(1, 1), (0, 2), (1, 4)])
def test_rejects_bad_pairs(i, j):
    with pytest.raises(TruthTableError):
        is_symmetric(GUARDED_OR, i, j)


def test_detect_rejects_bad_variable():
    with pytest.raises(TruthTableError):
        detect_symmetry(GUARDED_OR, [1, 5])


def _symmetric_table(rng: Random, n: int) -> TruthTable:
    """Random function of the weights of two variable blocks, so symmetry classes are non-trivial."""
    split = rng.randrange(1, n)
    values = {}
    bits = 0
    for m in range(1 << n):
        low = bin(m & ((1 << split) - 1)).count("1")
        high = bin(m >> split).count("1")
        if values.setdefault((low, high), rng.random() < 0.5):
            bits |= 1 << m
    return TruthTable(n, bits)


class TestClassPermutations:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_permuting_within_a_class_fixes_the_function(self, n):
        rng = Random(n)
        for _ in range(10):
            f = _symmetric_table(rng, n) if rng.random() < 0.7 else random_table(rng, n)
            classes = detect_symmetry(f, list(range(1, n + 1)))
            assert sorted(v for cls in classes for v in cls) == list(range(1, n + 1))

            perm = list(range(n))
            for cls in classes:
                positions = [v - 1 for v in cls]
                shuffled = positions[:]
                rng.shuffle(shuffled)
                for src, dst in zip(positions, shuffled):
                    perm[src] = dst
            assert apply_transform(f, NpnTransform(False, 0, tuple(perm))) == f

    @pytest.mark.parametrize("n", range(2, 7))
    def test_pairs_across_classes_are_not_symmetric(self, n):
        rng = Random(100 + n)
        for _ in range(10):
            f = _symmetric_table(rng, n)
            classes = detect_symmetry(f, list(range(1, n + 1)))
            for a, b in combinations(classes, 2):
                assert swap_variables(f, a[0], b[0]) != f
