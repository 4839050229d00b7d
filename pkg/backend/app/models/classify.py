"""
Classification models: class map, run statistics and per-item errors.
"""
from dataclasses import dataclass, field
from typing import Iterator, Optional

from pydantic import BaseModel, Field

from app.models.canonical import StageCounters
from app.models.truth_table import NpnTransform, TruthTable


class ItemError(BaseModel):
    """One input item that could not be parsed or canonicalized."""
    line: Optional[int] = Field(None, description="1-based input line, when known")
    text: str
    message: str


@dataclass
class ClassEntry:
    """
    One NPN class found in the input.

    Attributes:
        canonical: Canonical table, the class key
        count: Inputs that fell into the class
        representative: Smallest input table of the class
        witness: Transform taking `representative` to `canonical`
    """
    canonical: TruthTable
    count: int
    representative: TruthTable
    witness: NpnTransform

    def __reduce__(self):
        return (self.__class__, (self.canonical, self.count, self.representative, self.witness))


@dataclass
class ClassMap:
    """
    Canonical table -> class entry, keyed by (n, bits) so arities never mix.

    `assignments` maps each input item (by line) to its class key.
    """
    entries: dict[tuple[int, int], ClassEntry] = field(default_factory=dict)
    assignments: dict[int, tuple[int, int]] = field(default_factory=dict)

    def add(self, f: TruthTable, canonical: TruthTable, witness: NpnTransform, line: Optional[int] = None) -> None:
        key = (canonical.n, canonical.bits)
        if line is not None:
            self.assignments[line] = key
        entry = self.entries.get(key)
        if entry is None:
            self.entries[key] = ClassEntry(canonical, 1, f, witness)
            return
        entry.count += 1
        if f.bits < entry.representative.bits:
            entry.representative = f
            entry.witness = witness

    def merge(self, other: "ClassMap") -> "ClassMap":
        """
        Fold `other` into this map.

        Counts add; the smaller representative wins, so the result does not
        depend on merge order.
        """
        self.assignments.update(other.assignments)
        for key, theirs in other.entries.items():
            ours = self.entries.get(key)
            if ours is None:
                self.entries[key] = ClassEntry(
                    theirs.canonical, theirs.count, theirs.representative, theirs.witness
                )
                continue
            ours.count += theirs.count
            if theirs.representative.bits < ours.representative.bits:
                ours.representative = theirs.representative
                ours.witness = theirs.witness
        return self

    def sorted_entries(self) -> Iterator[ClassEntry]:
        """Entries by input count, then canonical table ascending."""
        for key in sorted(self.entries):
            yield self.entries[key]

    @property
    def total(self) -> int:
        return sum(entry.count for entry in self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, table: TruthTable) -> bool:
        return (table.n, table.bits) in self.entries

    def same_partition(self, other: "ClassMap") -> bool:
        """True iff both maps group the same input items together."""
        if self.assignments.keys() != other.assignments.keys():
            return False
        pairs = {(key, other.assignments[line]) for line, key in self.assignments.items()}
        return len(pairs) == len(set(self.assignments.values())) == len(set(other.assignments.values()))


class RunStats(BaseModel):
    """Aggregate statistics of one classification run."""
    method: str
    function_count: int = 0
    class_count: int = 0
    error_count: int = 0
    counters: StageCounters = Field(default_factory=StageCounters)
    timings: dict[str, float] = Field(default_factory=dict, description="Seconds per pipeline stage")
    wall_time: float = 0.0
    histogram: dict[int, int] = Field(
        default_factory=dict,
        description="Variable groups by size after the last grouping stage"
    )
    cache: dict[str, int] = Field(default_factory=dict)

    def absorb(self, other: "RunStats") -> "RunStats":
        """Add another partial run's totals into this one."""
        self.function_count += other.function_count
        self.error_count += other.error_count
        self.counters = self.counters + other.counters
        for stage, seconds in other.timings.items():
            self.timings[stage] = self.timings.get(stage, 0.0) + seconds
        for size, count in other.histogram.items():
            self.histogram[size] = self.histogram.get(size, 0) + count
        for name, value in other.cache.items():
            if name != "max_entries":
                self.cache[name] = self.cache.get(name, 0) + value
        return self


class BenchRow(BaseModel):
    """One method's totals in a benchmark comparison."""
    method: str
    function_count: int
    class_count: int
    wall_time: float
    counters: StageCounters
    timings: dict[str, float] = Field(default_factory=dict)
