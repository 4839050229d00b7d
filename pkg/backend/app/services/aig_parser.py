"""
AIGER reader and writer for combinational circuits.

ASCII (``aag``) and binary (``aig``) inputs produce the same Aig; latches
are rejected. Gates are returned in topological order whatever order the
file lists them in.
"""
import logging
from pathlib import Path
from typing import Iterator, Union

from app.models.aig import Aig, AndGate, lit_node
from app.models.errors import AigerError

logger = logging.getLogger(__name__)


def _parse_header(line: str, magic: str) -> tuple[int, int, int, int, int]:
    fields = line.split()
    if not fields or fields[0] != magic:
        raise AigerError(f"expected '{magic}' header, got '{line.strip()}'", 1)
    if len(fields) < 6:
        raise AigerError("header needs M I L O A counts", 1)
    try:
        counts = [int(x) for x in fields[1:]]
    except ValueError:
        raise AigerError(f"non-numeric header '{line.strip()}'", 1)
    if any(c < 0 for c in counts):
        raise AigerError("negative header count", 1)
    max_var, n_inputs, n_latches, n_outputs, n_ands = counts[:5]
    if n_latches:
        raise AigerError("sequential circuits unsupported", 1)
    if any(counts[5:]):
        raise AigerError("bad-state, constraint, justice and fairness sections unsupported", 1)
    if max_var < n_inputs + n_ands:
        raise AigerError(f"M={max_var} is smaller than I+L+A={n_inputs + n_ands}", 1)
    return max_var, n_inputs, n_latches, n_outputs, n_ands


def _ints(line: str, count: int, number: int) -> list[int]:
    fields = line.split()
    if len(fields) != count:
        raise AigerError(f"expected {count} literal(s), got '{line.strip()}'", number)
    try:
        values = [int(x) for x in fields]
    except ValueError:
        raise AigerError(f"non-numeric literal in '{line.strip()}'", number)
    if any(v < 0 for v in values):
        raise AigerError("negative literal", number)
    return values


def _parse_symbols(lines: list[str], first_number: int) -> dict[str, str]:
    symbols = {}
    for offset, line in enumerate(lines):
        text = line.strip()
        if not text:
            continue
        if text == "c" or text.startswith("c "):
            break
        key, _, name = text.partition(" ")
        if key[:1] not in ("i", "o") or not key[1:].isdigit():
            raise AigerError(f"malformed symbol entry '{text}'", first_number + offset)
        symbols[key] = name
    return symbols


def _topological_gates(gates: dict[int, tuple[AndGate, int]]) -> tuple[AndGate, ...]:
    """Gates with fanins first; visits in file order so the result is deterministic."""
    done: set[int] = set()
    active: set[int] = set()
    ordered: list[AndGate] = []

    for root in sorted(gates, key=lambda node: gates[node][1]):
        if root in done:
            continue
        stack = [(root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                active.discard(node)
                done.add(node)
                ordered.append(gates[node][0])
                continue
            if node in done:
                continue
            if node in active:
                gate, number = gates[node]
                raise AigerError(f"cyclic definition through literal {gate.lhs}", number)
            active.add(node)
            stack.append((node, True))
            gate = gates[node][0]
            for fanin in reversed(gate.fanins):
                if fanin in gates and fanin not in done:
                    if fanin in active:
                        raise AigerError(f"cyclic definition through literal {2 * fanin}", gates[fanin][1])
                    stack.append((fanin, False))
    return tuple(ordered)


def parse_aag(text: str) -> Aig:
    """
    Parse ASCII AIGER.

    Raises:
        AigerError: Bad header, literal out of range or redefined, reference
            to an undefined node, cyclic definition, or latches present
    """
    lines = text.splitlines()
    if not lines:
        raise AigerError("empty file", 1)
    max_var, n_inputs, _, n_outputs, n_ands = _parse_header(lines[0], "aag")
    max_lit = 2 * max_var + 1

    def line_at(index: int) -> str:
        if index >= len(lines):
            raise AigerError("unexpected end of file", index + 1)
        return lines[index]

    defined: set[int] = {0}
    inputs = []
    cursor = 1
    for _ in range(n_inputs):
        (lit,) = _ints(line_at(cursor), 1, cursor + 1)
        if lit & 1 or lit < 2 or lit > max_lit:
            raise AigerError(f"invalid input literal {lit}", cursor + 1)
        if lit_node(lit) in defined:
            raise AigerError(f"literal {lit} defined twice", cursor + 1)
        defined.add(lit_node(lit))
        inputs.append(lit)
        cursor += 1

    outputs = []
    output_lines = []
    for _ in range(n_outputs):
        (lit,) = _ints(line_at(cursor), 1, cursor + 1)
        if lit > max_lit:
            raise AigerError(f"output literal {lit} exceeds 2M+1={max_lit}", cursor + 1)
        outputs.append(lit)
        output_lines.append(cursor + 1)
        cursor += 1

    gates: dict[int, tuple[AndGate, int]] = {}
    for _ in range(n_ands):
        lhs, rhs0, rhs1 = _ints(line_at(cursor), 3, cursor + 1)
        if lhs & 1 or lhs < 2 or lhs > max_lit:
            raise AigerError(f"invalid AND output literal {lhs}", cursor + 1)
        if lit_node(lhs) in defined:
            raise AigerError(f"literal {lhs} defined twice", cursor + 1)
        for rhs in (rhs0, rhs1):
            if rhs > max_lit:
                raise AigerError(f"literal {rhs} exceeds 2M+1={max_lit}", cursor + 1)
        defined.add(lit_node(lhs))
        gates[lit_node(lhs)] = (AndGate(lhs, rhs0, rhs1), cursor + 1)
        cursor += 1

    for gate, number in gates.values():
        for rhs in (gate.rhs0, gate.rhs1):
            if lit_node(rhs) not in defined:
                raise AigerError(f"literal {rhs} references an undefined node", number)
    for lit, number in zip(outputs, output_lines):
        if lit_node(lit) not in defined:
            raise AigerError(f"output literal {lit} references an undefined node", number)

    aig = Aig(
        max_var=max_var,
        inputs=tuple(inputs),
        outputs=tuple(outputs),
        gates=_topological_gates(gates),
        symbols=_parse_symbols(lines[cursor:], cursor + 1),
    )
    logger.debug(f"Parsed aag: {n_inputs} inputs, {n_outputs} outputs, {n_ands} gates")
    return aig


def _decode_deltas(data: bytes, pos: int) -> Iterator[tuple[int, int]]:
    """Yield (value, next position) for successive 7-bit varints."""
    while True:
        value = shift = 0
        while True:
            if pos >= len(data):
                raise AigerError("truncated binary AND section")
            byte = data[pos]
            pos += 1
            value |= (byte & 0x7F) << shift
            if not byte & 0x80:
                break
            shift += 7
        yield value, pos


def parse_aig(data: bytes) -> Aig:
    """
    Parse binary AIGER (inputs implicit, AND gates delta-encoded).

    Raises:
        AigerError: as parse_aag, plus truncated or inconsistent delta encoding
    """
    newline = data.find(b"\n")
    if newline < 0:
        raise AigerError("missing header line", 1)
    max_var, n_inputs, n_latches, n_outputs, n_ands = _parse_header(
        data[:newline].decode("ascii", errors="replace"), "aig"
    )
    if max_var != n_inputs + n_latches + n_ands:
        raise AigerError(f"binary format needs M = I+L+A, got M={max_var}", 1)
    max_lit = 2 * max_var + 1

    pos = newline + 1
    outputs = []
    for index in range(n_outputs):
        end = data.find(b"\n", pos)
        if end < 0:
            raise AigerError("unexpected end of file", index + 2)
        (lit,) = _ints(data[pos:end].decode("ascii", errors="replace"), 1, index + 2)
        if lit > max_lit:
            raise AigerError(f"output literal {lit} exceeds 2M+1={max_lit}", index + 2)
        outputs.append(lit)
        pos = end + 1

    gates = []
    deltas = _decode_deltas(data, pos)
    for index in range(n_ands):
        lhs = 2 * (n_inputs + n_latches + index + 1)
        delta0, _ = next(deltas)
        delta1, pos = next(deltas)
        rhs0 = lhs - delta0
        rhs1 = rhs0 - delta1
        if delta0 == 0 or rhs0 < 0 or rhs1 < 0:
            raise AigerError(f"invalid delta encoding for AND gate {index}")
        gates.append(AndGate(lhs, rhs0, rhs1))

    trailer = data[pos:].decode("utf-8", errors="replace").splitlines()
    aig = Aig(
        max_var=max_var,
        inputs=tuple(2 * (i + 1) for i in range(n_inputs)),
        outputs=tuple(outputs),
        gates=tuple(gates),
        symbols=_parse_symbols(trailer, 2 + n_outputs),
    )
    logger.debug(f"Parsed aig: {n_inputs} inputs, {n_outputs} outputs, {n_ands} gates")
    return aig


def load_aiger(source: Union[str, Path, bytes]) -> Aig:
    """
    Parse an AIGER file (path) or its raw content, ASCII or binary by header.
    """
    data = source if isinstance(source, bytes) else Path(source).read_bytes()
    if data.startswith(b"aag"):
        try:
            return parse_aag(data.decode("utf-8"))
        except UnicodeDecodeError as e:
            raise AigerError(f"ASCII AIGER is not valid text: {e}")
    if data.startswith(b"aig"):
        return parse_aig(data)
    raise AigerError("not an AIGER file (expected 'aag' or 'aig' header)", 1)


def to_aag(aig: Aig) -> str:
    """Print ASCII AIGER; parse_aag(to_aag(aig)) reproduces the structure."""
    lines = [f"aag {aig.max_var} {len(aig.inputs)} 0 {len(aig.outputs)} {len(aig.gates)}"]
    lines.extend(str(lit) for lit in aig.inputs)
    lines.extend(str(lit) for lit in aig.outputs)
    lines.extend(f"{g.lhs} {g.rhs0} {g.rhs1}" for g in aig.gates)
    for key in sorted(aig.symbols, key=lambda k: (k[0], int(k[1:]))):
        lines.append(f"{key} {aig.symbols[key]}")
    return "\n".join(lines) + "\n"
