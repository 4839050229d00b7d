"""
And-Inverter Graph models.

Literals follow AIGER: 2*node for the plain signal, 2*node + 1 for its
complement; node 0 is the constant false.
"""
from dataclasses import dataclass, field
from typing import Optional

from app.models.truth_table import TruthTable


def lit_node(literal: int) -> int:
    return literal >> 1


def lit_negated(literal: int) -> bool:
    return bool(literal & 1)


@dataclass(frozen=True)
class AndGate:
    """Two-input AND: lhs = rhs0 & rhs1 (all literals)."""
    lhs: int
    rhs0: int
    rhs1: int

    @property
    def node(self) -> int:
        return lit_node(self.lhs)

    @property
    def fanins(self) -> tuple[int, int]:
        return (lit_node(self.rhs0), lit_node(self.rhs1))


@dataclass
class Aig:
    """
    Combinational And-Inverter Graph.

    Attributes:
        max_var: Largest node index (the M of the header)
        inputs: Input literals in file order
        outputs: Output literals in file order
        gates: AND gates in topological order
        symbols: Optional names, keyed like the AIGER symbol table ("i0", "o1", ...)
    """
    max_var: int
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    gates: tuple[AndGate, ...]
    symbols: dict[str, str] = field(default_factory=dict)

    @property
    def input_nodes(self) -> tuple[int, ...]:
        return tuple(lit_node(lit) for lit in self.inputs)

    @property
    def topological_order(self) -> list[int]:
        """Input nodes ascending, then gate nodes with fanins first."""
        return sorted(self.input_nodes) + [gate.node for gate in self.gates]

    def gate_map(self) -> dict[int, AndGate]:
        return {gate.node: gate for gate in self.gates}

    def structure(self) -> tuple:
        """Comparable structural fingerprint (symbols excluded)."""
        return (self.max_var, self.inputs, self.outputs,
                tuple((g.lhs, g.rhs0, g.rhs1) for g in self.gates))


@dataclass(frozen=True)
class Cut:
    """
    K-feasible cut of a node.

    Attributes:
        node: Root node
        leaves: Leaf node indices, sorted ascending; leaf i is input x_(i+1)
        table: Function of the root over the leaves, when computed
    """
    node: int
    leaves: tuple[int, ...]
    table: Optional[TruthTable] = None

    @property
    def size(self) -> int:
        return len(self.leaves)

    @property
    def trivial(self) -> bool:
        return self.leaves == (self.node,)
