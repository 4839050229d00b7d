import io
import logging

import pytest

from app.models.canonical import Method, SymmetryPolicy
from app.models.classify import ClassMap
from app.models.signatures import SignatureCombination
from app.models.truth_table import NpnTransform, TruthTable
from app.services.classifier import Classifier, classify, grouping_histogram
from app.services.report import write_class_csv
from app.services.truth_table import apply_transform, to_hex

PIPELINE = [Method.HYBRID, Method.OPTIMIZED, Method.BASELINE_NO_INF]


class TestClassify:
    def test_two_input_classes(self, two_input_tables):
        classes, stats = classify(two_input_tables)
        counts = {to_hex(e.canonical): e.count for e in classes.sorted_entries()}
        assert counts == {"0": 2, "1": 8, "5": 4, "6": 2}
        assert stats.function_count == 16
        assert stats.class_count == 4
        assert classes.total == 16

    def test_representatives_and_witnesses(self, two_input_tables):
        classes, _ = classify(two_input_tables)
        representatives = {to_hex(e.canonical): to_hex(e.representative) for e in classes.sorted_entries()}
        assert representatives == {"0": "0", "1": "1", "5": "3", "6": "6"}
        for entry in classes.sorted_entries():
            assert apply_transform(entry.representative, entry.witness) == entry.canonical

    @pytest.mark.parametrize("method", PIPELINE + [Method.EXHAUSTIVE])
    def test_three_input_class_count(self, method, three_input_tables):
        classes, _ = classify(three_input_tables, method)
        assert len(classes) == 14

    def test_methods_agree_on_partition(self, three_input_tables):
        maps = [Classifier(method).classify(three_input_tables)[0] for method in PIPELINE]
        assert all(m.same_partition(maps[0]) for m in maps[1:])

    def test_mixed_input_counts_kept_apart(self):
        classes, _ = classify([TruthTable(2, 0), TruthTable(3, 0)])
        assert len(classes) == 2

    def test_worker_count_does_not_change_output(self, three_input_tables):
        outputs = []
        for jobs in (1, 3):
            classes, stats, errors = Classifier(jobs=jobs).classify(three_input_tables)
            stream = io.StringIO()
            write_class_csv(classes, stream)
            outputs.append((stream.getvalue(), stats.function_count, stats.histogram))
            assert errors == []
        assert outputs[0] == outputs[1]

    def test_failures_reported_per_item(self):
        classifier = Classifier(Method.EXHAUSTIVE, exhaustive_cap=2)
        classes, stats, errors = classifier.classify(
            [TruthTable(2, 0x8), TruthTable(3, 0xE8)], lines=[4, 9]
        )
        assert len(classes) == 1
        assert stats.error_count == 1
        assert [e.line for e in errors] == [9]
        assert classes.assignments == {4: (2, 0x1)}

    def test_stats(self, three_input_tables):
        _, stats, _ = Classifier().classify(three_input_tables)
        assert stats.method == "inf-plus"
        assert stats.counters.polarity_candidates >= 256
        assert sum(size * count for size, count in stats.histogram.items()) == 3 * 256
        assert list(stats.histogram) == sorted(stats.histogram)
        assert stats.cache["misses"] == 256

    def test_rejects_zero_jobs(self):
        with pytest.raises(ValueError):
            Classifier(jobs=0)

    def test_representative_policy_still_runs(self, two_input_tables):
        classes, _ = classify(two_input_tables, policy=SymmetryPolicy.REPRESENTATIVE)
        assert len(classes) == 4

    def test_representative_policy_warns(self, two_input_tables, caplog):
        with caplog.at_level(logging.WARNING, logger="app.services.classifier"):
            classify(two_input_tables, policy=SymmetryPolicy.REPRESENTATIVE)
        assert "Representative symmetry pruning can split NPN classes" in caplog.text

    def test_exact_policy_is_quiet(self, two_input_tables, caplog):
        with caplog.at_level(logging.WARNING, logger="app.services.classifier"):
            classify(two_input_tables)
        assert not caplog.records


class TestClassMap:
    def test_merge_keeps_smallest_representative(self):
        key = TruthTable(2, 0x1)
        left, right = ClassMap(), ClassMap()
        left.add(TruthTable(2, 0x8), key, NpnTransform(False, 3, (0, 1)), 1)
        right.add(TruthTable(2, 0x2), key, NpnTransform(False, 1, (0, 1)), 2)

        merged = ClassMap().merge(left).merge(right)
        reverse = ClassMap().merge(right).merge(left)
        for m in (merged, reverse):
            entry = m.entries[(2, 0x1)]
            assert entry.count == 2
            assert entry.representative == TruthTable(2, 0x2)
        assert key in merged

    def test_same_partition(self):
        a, b = ClassMap(), ClassMap()
        t = NpnTransform.identity(2)
        a.add(TruthTable(2, 1), TruthTable(2, 1), t, 1)
        a.add(TruthTable(2, 2), TruthTable(2, 1), t, 2)
        b.add(TruthTable(2, 1), TruthTable(2, 5), t, 1)
        b.add(TruthTable(2, 2), TruthTable(2, 5), t, 2)
        assert a.same_partition(b)

        b.add(TruthTable(2, 3), TruthTable(2, 6), t, 3)
        assert not a.same_partition(b)


class TestGroupingHistogram:
    def test_influence_grouping(self, mixed_groups):
        assert grouping_histogram([mixed_groups], Method.HYBRID) == {1: 2, 2: 2}

    def test_cofactor_only(self, mixed_groups):
        assert grouping_histogram([mixed_groups], Method.BASELINE_NO_INF) == {2: 1, 4: 1}
        assert grouping_histogram(
            [mixed_groups], combination=SignatureCombination.COFACTOR
        ) == {2: 1, 4: 1}
