"""
Batch NPN classification.

Functions are canonicalized one by one (or in contiguous chunks across a
process pool) and bucketed by canonical table. Partial results merge with
an order-independent merge, and every class witness is recomputed from its
representative at the end, so the output never depends on the worker count.
"""
import logging
import multiprocessing as mp
from collections import Counter
from time import perf_counter
from typing import Iterable, Optional, Sequence

from app.models.canonical import Method, SymmetryPolicy
from app.models.classify import ClassMap, ItemError, RunStats
from app.models.errors import InvariantViolation, NpnError
from app.models.signatures import SignatureCombination
from app.models.truth_table import TruthTable
from app.services.canonical import CanonicalEngine
from app.services.canonical_cache import CanonicalCache
from app.services.signatures import variable_grouping

logger = logging.getLogger(__name__)


def _classify_chunk(payload: tuple) -> tuple[ClassMap, RunStats, list[ItemError]]:
    """Worker entry point; module-level so the pool can pickle it."""
    options, items = payload
    return Classifier(**options)._classify_serial(items)


class Classifier:
    """Canonicalize a corpus and bucket it into NPN classes."""

    def __init__(
        self,
        method: Method = Method.OPTIMIZED,
        sers_base: int = 3,
        policy: SymmetryPolicy = SymmetryPolicy.EXACT,
        exhaustive_cap: int = 6,
        jobs: int = 1,
        cache_entries: int = 100000,
    ):
        if jobs < 1:
            raise ValueError(f"worker count must be at least 1, got {jobs}")
        self.method = Method(method)
        self.sers_base = sers_base
        self.policy = SymmetryPolicy(policy)
        self.exhaustive_cap = exhaustive_cap
        self.jobs = jobs
        self.cache_entries = cache_entries

    @classmethod
    def from_settings(cls, settings, **overrides) -> "Classifier":
        options = dict(
            method=settings.method,
            sers_base=settings.sers_base,
            policy=settings.symmetry_policy,
            exhaustive_cap=settings.exhaustive_cap,
            jobs=settings.jobs,
            cache_entries=settings.cache_entries,
        )
        options.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**options)

    def _options(self, jobs: int = 1) -> dict:
        return dict(
            method=self.method,
            sers_base=self.sers_base,
            policy=self.policy,
            exhaustive_cap=self.exhaustive_cap,
            jobs=jobs,
            cache_entries=self.cache_entries,
        )

    def engine(self, cache: Optional[CanonicalCache] = None) -> CanonicalEngine:
        return CanonicalEngine(
            self.method, self.sers_base, self.policy, self.exhaustive_cap, cache=cache
        )

    def classify(
        self,
        functions: Sequence[TruthTable],
        lines: Optional[Sequence[int]] = None,
    ) -> tuple[ClassMap, RunStats, list[ItemError]]:
        """
        Bucket functions into NPN classes.

        Args:
            functions: Tables to classify; mixed input counts are kept apart
            lines: Source line of each function, used in error reports

        Returns:
            (class map, run statistics, items that failed)
        """
        start = perf_counter()
        if self.policy == SymmetryPolicy.REPRESENTATIVE:
            logger.warning(
                "Representative symmetry pruning can split NPN classes; "
                "class counts may exceed the exact partition"
            )
        items = list(zip(lines if lines is not None else range(1, len(functions) + 1), functions))

        if self.jobs > 1 and len(items) > 1:
            size = -(-len(items) // self.jobs)
            chunks = [items[i:i + size] for i in range(0, len(items), size)]
            logger.info(f"Classifying {len(items)} functions in {len(chunks)} chunks ({self.method.value})")
            with mp.Pool(processes=min(self.jobs, len(chunks))) as pool:
                parts = pool.map(_classify_chunk, [(self._options(), chunk) for chunk in chunks])
        else:
            logger.info(f"Classifying {len(items)} functions ({self.method.value})")
            parts = [self._classify_serial(items)]

        classes = ClassMap()
        stats = RunStats(method=self.method.value)
        errors: list[ItemError] = []
        for part_classes, part_stats, part_errors in parts:
            classes.merge(part_classes)
            stats.absorb(part_stats)
            errors.extend(part_errors)

        # Witnesses straight from the representative, independent of caching.
        engine = self.engine()
        for entry in classes.entries.values():
            result = engine.canonicalize(entry.representative)
            if result.canonical != entry.canonical:
                raise InvariantViolation(
                    f"representative {entry.representative} no longer maps to {entry.canonical}"
                )
            entry.witness = result.witness

        stats.histogram = dict(sorted(stats.histogram.items()))
        stats.class_count = len(classes)
        stats.wall_time = perf_counter() - start
        logger.info(
            f"{stats.function_count} functions -> {stats.class_count} classes "
            f"in {stats.wall_time:.3f}s ({stats.error_count} errors)"
        )
        return classes, stats, errors

    def _classify_serial(self, items: Iterable[tuple[int, TruthTable]]) -> tuple[ClassMap, RunStats, list[ItemError]]:
        cache = CanonicalCache(self.cache_entries)
        engine = self.engine(cache)
        classes = ClassMap()
        stats = RunStats(method=self.method.value)
        errors: list[ItemError] = []
        histogram: Counter = Counter()

        for line, f in items:
            try:
                result = engine.canonicalize(f)
            except InvariantViolation:
                raise
            except NpnError as e:
                logger.error(f"line {line}: {e}")
                errors.append(ItemError(line=line, text=str(f), message=str(e)))
                stats.error_count += 1
                continue
            classes.add(f, result.canonical, result.witness, line)
            stats.function_count += 1
            stats.counters = stats.counters + result.counters
            for stage, seconds in result.timings.items():
                stats.timings[stage] = stats.timings.get(stage, 0.0) + seconds
            histogram.update(result.group_sizes)

        stats.histogram = dict(sorted(histogram.items()))
        stats.cache = cache.get_stats()
        return classes, stats, errors


def classify(
    functions: Sequence[TruthTable],
    method: Method = Method.OPTIMIZED,
    **options,
) -> tuple[ClassMap, RunStats]:
    """Classify with default settings; per-item errors are counted in the stats."""
    classes, stats, _ = Classifier(method=method, **options).classify(functions)
    return classes, stats


def grouping_histogram(
    functions: Iterable[TruthTable],
    method: Method = Method.OPTIMIZED,
    combination: Optional[SignatureCombination] = None,
    sers_base: int = 3,
) -> dict[int, int]:
    """
    Count variable groups by size over a corpus.

    Groups are taken after influence refinement, or after cofactor grouping
    for BASELINE_NO_INF. An explicit signature combination overrides the
    method's grouping.
    """
    engine = CanonicalEngine(method, sers_base)
    histogram: Counter = Counter()
    for f in functions:
        if combination is not None:
            sizes = [len(group) for group in variable_grouping(f, combination, sers_base)]
        else:
            sizes = [group.size for group in engine.prepare(f)[0].groups]
        histogram.update(sizes)
    return dict(sorted(histogram.items()))
