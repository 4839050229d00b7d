"""
Text reports: class CSV, per-function canon lines, stats JSON lines and
the benchmark comparison CSV.

Every CSV starts with a versioned ``#`` header comment; consumers key on
column names.
"""
import csv
from typing import Iterable, TextIO

from app.models.canonical import STAGES, CanonicalResult, StageCounters
from app.models.classify import BenchRow, ClassMap, ItemError, RunStats
from app.models.truth_table import TruthTable
from app.services.truth_table import to_hex

CLASS_HEADER = "# npn-classes v1"
BENCH_HEADER = "# npn-bench v1"
CLASS_COLUMNS = ["canonical_hex", "count", "representative_hex", "out_neg", "phase_mask_hex", "perm"]
COUNTER_COLUMNS = list(StageCounters.model_fields)


def write_class_csv(classes: ClassMap, stream: TextIO) -> int:
    """
    Write one row per class, sorted by input count then canonical table.

    Returns:
        Number of rows written
    """
    stream.write(CLASS_HEADER + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CLASS_COLUMNS)
    rows = 0
    for entry in classes.sorted_entries():
        out_neg, phase, perm = entry.witness.to_fields()
        writer.writerow([
            to_hex(entry.canonical),
            entry.count,
            to_hex(entry.representative),
            out_neg,
            phase,
            perm,
        ])
        rows += 1
    return rows


def read_class_csv(stream: TextIO) -> list[dict[str, str]]:
    """Rows of a class CSV as column -> text dicts."""
    lines = [line for line in stream if not line.startswith("#")]
    return list(csv.DictReader(lines))


def canon_line(f: TruthTable, result: CanonicalResult, with_counters: bool = False) -> str:
    """`input_hex canonical_hex out_neg phase_mask perm [counter=value ...]`."""
    fields = [to_hex(f), to_hex(result.canonical), *result.witness.to_fields()]
    if with_counters:
        counters = result.counters
        fields.extend(f"{name}={getattr(counters, name)}" for name in COUNTER_COLUMNS)
        fields.append(f"remaining_after_sym={counters.remaining_after_sym}")
    return " ".join(fields)


def write_stats_jsonl(stats: RunStats, errors: Iterable[ItemError], stream: TextIO) -> None:
    """Run summary on the first line, then one line per failed item."""
    stream.write(stats.model_dump_json() + "\n")
    for error in errors:
        stream.write(error.model_dump_json() + "\n")


def summary_lines(stats: RunStats) -> list[str]:
    """Human-readable run summary in the #Funcs / #Classes layout."""
    counters = stats.counters
    lines = [
        f"#Funcs {stats.function_count}",
        f"#Classes {stats.class_count}",
        f"#Errors {stats.error_count}",
        f"Runtime {stats.wall_time:.3f}s",
        f"#Phase {counters.phase_after_sym}",
        f"#Perm {counters.perm_after_inf}",
        f"#Enum {counters.final_enumerations}",
    ]
    if stats.histogram:
        lines.append("Groups " + " ".join(f"var-{size}:{count}" for size, count in stats.histogram.items()))
    return lines


def write_bench_csv(rows: Iterable[BenchRow], stream: TextIO) -> None:
    stream.write(BENCH_HEADER + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(
        ["method", "functions", "classes", "wall_time"]
        + COUNTER_COLUMNS
        + [f"time_{stage}" for stage in STAGES]
    )
    for row in rows:
        writer.writerow(
            [row.method, row.function_count, row.class_count, f"{row.wall_time:.6f}"]
            + [getattr(row.counters, name) for name in COUNTER_COLUMNS]
            + [f"{row.timings.get(stage, 0.0):.6f}" for stage in STAGES]
        )
