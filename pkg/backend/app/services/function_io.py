"""
Truth-table text format.

One hex table per line (binary for fewer than two inputs). Blank lines and
``#`` comments are skipped; a ``# n=K`` comment sets the input count for
the lines that follow. Without a known count, it is inferred per line from
the digit count.
"""
import logging
import re
from typing import Iterable, Optional, TextIO

from app.models.classify import ItemError
from app.models.errors import TruthTableError
from app.models.truth_table import TruthTable
from app.services.truth_table import parse_hex, to_hex

logger = logging.getLogger(__name__)

_SENTINEL = re.compile(r"^#\s*n\s*=\s*(\d+)\s*$")


def read_functions(
    lines: Iterable[str],
    inputs: Optional[int] = None,
) -> tuple[list[tuple[int, TruthTable]], list[ItemError]]:
    """
    Parse truth-table text, skipping and reporting malformed lines.

    Args:
        lines: Text lines
        inputs: Input count until the first sentinel; None infers per line

    Returns:
        ((line number, table) pairs, errors)
    """
    records: list[tuple[int, TruthTable]] = []
    errors: list[ItemError] = []
    n = inputs
    for number, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        if text.startswith("#"):
            match = _SENTINEL.match(text)
            if match:
                n = int(match.group(1))
            continue
        # First whitespace-separated field, so canon output can be read back.
        token = text.split()[0]
        try:
            records.append((number, parse_hex(token, n)))
        except TruthTableError as e:
            logger.warning(f"line {number}: {e}")
            errors.append(ItemError(line=number, text=token, message=str(e)))
    return records, errors


def write_functions(functions: Iterable[TruthTable], stream: TextIO) -> int:
    """
    Write tables one per line, with a sentinel whenever the input count changes.

    Returns:
        Number of tables written
    """
    current = None
    written = 0
    for f in functions:
        if f.n != current:
            stream.write(f"# n={f.n}\n")
            current = f.n
        stream.write(to_hex(f) + "\n")
        written += 1
    return written
