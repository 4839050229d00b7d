"""
K-feasible cut enumeration and cut truth tables.

Cuts are merged bottom-up in topological order. Each node keeps its
dominance-free cuts of at most K leaves, capped at `limit` by
(size, leaves) priority; the trivial cut takes a slot like any other.
"""
import logging
from typing import Iterable, Optional

from app.models.aig import Aig, Cut, lit_negated, lit_node
from app.models.errors import InvariantViolation, MethodError
from app.models.truth_table import TruthTable
from app.utils.bits import MAX_INPUTS, full_mask, var_mask

logger = logging.getLogger(__name__)


def _check_bounds(k: int, limit: int) -> None:
    if not 2 <= k <= MAX_INPUTS:
        raise MethodError(f"cut size K={k} outside 2..{MAX_INPUTS}")
    if limit < 1:
        raise MethodError(f"cut limit must be at least 1, got {limit}")


def _filter_dominated(cuts: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Drop every cut that strictly contains another; result sorted by (size, leaves)."""
    kept: list[tuple[int, ...]] = []
    kept_sets: list[frozenset[int]] = []
    for cut in sorted(set(cuts), key=lambda c: (len(c), c)):
        leaves = frozenset(cut)
        if any(other < leaves for other in kept_sets):
            continue
        kept.append(cut)
        kept_sets.append(leaves)
    return kept


def enumerate_cuts(aig: Aig, k: int = 8, limit: int = 64) -> dict[int, list[tuple[int, ...]]]:
    """
    Leaf sets of every node's cuts.

    Args:
        aig: Circuit
        k: Largest leaf count, 2..16
        limit: Cuts kept per node

    Returns:
        node -> sorted leaf tuples, smallest cuts first

    Raises:
        MethodError: K or limit out of range
    """
    _check_bounds(k, limit)
    cuts: dict[int, list[tuple[int, ...]]] = {0: [()]}
    for node in aig.input_nodes:
        cuts[node] = [(node,)]
    for gate in aig.gates:
        left, right = gate.fanins
        merged = {(gate.node,)}
        for c0 in cuts[left]:
            for c1 in cuts[right]:
                union = tuple(sorted(set(c0) | set(c1)))
                if len(union) <= k:
                    merged.add(union)
        cuts[gate.node] = _filter_dominated(merged)[:limit]
    return cuts


def cut_truth_table(aig: Aig, node: int, leaves: Iterable[int]) -> TruthTable:
    """
    Function of `node` over the cut leaves, leaf i driving x_(i+1) in ascending node order.

    Raises:
        InvariantViolation: the cone reaches an input that is not a leaf
    """
    leaves = tuple(sorted(leaves))
    n = len(leaves)
    full = full_mask(n)
    values: dict[int, int] = {0: 0}
    for i, leaf in enumerate(leaves):
        values[leaf] = var_mask(n, i)
    gate_map = aig.gate_map()

    def literal(lit: int) -> int:
        value = values[lit_node(lit)]
        return value ^ full if lit_negated(lit) else value

    stack = [node]
    while stack:
        current = stack[-1]
        if current in values:
            stack.pop()
            continue
        gate = gate_map.get(current)
        if gate is None:
            raise InvariantViolation(f"cone of node {node} escapes cut {leaves} at node {current}")
        pending = [f for f in gate.fanins if f not in values]
        if pending:
            stack.extend(pending)
            continue
        values[current] = literal(gate.rhs0) & literal(gate.rhs1)
        stack.pop()
    return TruthTable(n, values[node])


class CutEnumerator:
    """Extract K-input functions from a circuit's cuts."""

    def __init__(self, k: int = 8, limit: int = 64):
        _check_bounds(k, limit)
        self.k = k
        self.limit = limit

    def cuts(self, aig: Aig, with_tables: bool = True) -> list[Cut]:
        """Non-trivial cuts of 2..K leaves, gates in topological order."""
        found = []
        per_node = enumerate_cuts(aig, self.k, self.limit)
        for gate in aig.gates:
            for leaves in per_node[gate.node]:
                if len(leaves) < 2 or leaves == (gate.node,):
                    continue
                table = cut_truth_table(aig, gate.node, leaves) if with_tables else None
                found.append(Cut(gate.node, leaves, table))
        return found

    def extract(self, aig: Aig, dedupe: bool = False) -> list[TruthTable]:
        """
        Cut truth tables, optionally de-duplicated on raw table bits
        (first occurrence kept).
        """
        tables = [cut.table for cut in self.cuts(aig)]
        if dedupe:
            seen: set[tuple[int, int]] = set()
            unique = []
            for table in tables:
                key = (table.n, table.bits)
                if key not in seen:
                    seen.add(key)
                    unique.append(table)
            tables = unique
        logger.info(f"Extracted {len(tables)} functions from {len(aig.gates)} gates (K={self.k})")
        return tables


def extract_functions(
    aig: Aig,
    k: int = 8,
    limit: int = 64,
    dedupe: bool = False,
    enumerator: Optional[CutEnumerator] = None,
) -> list[TruthTable]:
    """All cut truth tables with 2..K leaves."""
    return (enumerator or CutEnumerator(k, limit)).extract(aig, dedupe)
