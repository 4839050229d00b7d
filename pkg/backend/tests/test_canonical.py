from random import Random

import pytest

from app.models.canonical import Method, SymmetryPolicy
from app.models.errors import MethodError, TruthTableError
from app.models.truth_table import TruthTable
from app.services.canonical import (
    CanonicalEngine,
    canonicalize,
    decide_polarity,
    group_and_phase_by_cofactor,
    select_phase_candidates,
    signature_vector,
    stage_counters,
)
from app.services.canonical_cache import CanonicalCache
from app.services.truth_table import apply_transform, to_hex
from app.services.verifier import random_table, random_transform

PIPELINE = [Method.HYBRID, Method.OPTIMIZED, Method.BASELINE_NO_INF]
POLICIES = [SymmetryPolicy.EXACT, SymmetryPolicy.REPRESENTATIVE]


class TestStages:
    def test_polarity(self):
        assert decide_polarity(TruthTable(2, 0x8)) == [(False, TruthTable(2, 0x8))]
        assert decide_polarity(TruthTable(2, 0xE)) == [(True, TruthTable(2, 0x1))]
        assert len(decide_polarity(TruthTable(2, 0x6))) == 2

    def test_cofactor_stage_fixes_phase(self):
        state = group_and_phase_by_cofactor(TruthTable(2, 0x8))
        assert state.phase_mask == 0b11
        assert state.u_phase == ()
        assert state.bits == 0x1
        assert state.variable_groups() == [[1, 2]]

    def test_cofactor_stage_groups(self, half_split):
        state = group_and_phase_by_cofactor(half_split)
        assert state.undetermined_phase() == [1, 2, 3, 4]
        assert state.variable_groups() == [[6], [5], [1, 2, 3, 4]]
        assert state.phase_mask == 0b110000

    def test_constant_has_no_undetermined_phase(self):
        state = group_and_phase_by_cofactor(TruthTable(3, 0))
        assert state.constant
        assert state.u_phase == ()
        assert state.u_perm == ()

    def test_phase_selection_rejects_exhaustive(self):
        state = group_and_phase_by_cofactor(TruthTable(2, 0x8))
        with pytest.raises(MethodError):
            select_phase_candidates(state, Method.EXHAUSTIVE)


class TestCounters:
    def test_half_split_exact(self, half_split):
        counters = stage_counters(half_split, Method.OPTIMIZED, SymmetryPolicy.EXACT)
        assert counters.polarity_candidates == 2
        assert counters.phase_after_cof == 16
        assert counters.perm_after_cof == 24
        assert counters.phase_after_sym == 12
        assert counters.perm_after_sym == 12
        assert counters.perm_after_inf == 1
        assert counters.remaining_after_sym == 144

    def test_half_split_representative(self, half_split):
        counters = stage_counters(half_split, Method.OPTIMIZED, SymmetryPolicy.REPRESENTATIVE)
        assert counters.phase_after_cof == 16
        assert counters.phase_after_sym == 8
        assert counters.perm_after_sym == 6
        assert counters.remaining_after_sym == 48
        assert counters.perm_after_inf == 1

    def test_mixed_groups(self, mixed_groups):
        counters = stage_counters(mixed_groups, Method.HYBRID)
        assert counters.perm_after_cof == 48
        assert counters.perm_after_inf == 4

    def test_baseline_skips_influence(self, mixed_groups):
        counters = stage_counters(mixed_groups, Method.BASELINE_NO_INF)
        assert counters.perm_after_inf == counters.perm_after_sym

    @pytest.mark.parametrize("method", PIPELINE)
    def test_constants(self, method):
        for bits in (0, 0xFF):
            result = canonicalize(TruthTable(3, bits), method)
            assert result.canonical == TruthTable(3, 0)
            assert result.counters.model_dump() == dict.fromkeys(result.counters.model_dump(), 1)

    @pytest.mark.parametrize("method", PIPELINE)
    def test_stages_never_grow(self, method, rng):
        for _ in range(20):
            counters = stage_counters(random_table(rng, 5), method)
            assert counters.phase_after_sym <= counters.phase_after_cof
            assert counters.perm_after_sym <= counters.perm_after_cof
            assert counters.perm_after_inf <= counters.perm_after_sym

    @staticmethod
    def _corpus(rng: Random, count: int, n: int = 8) -> list[TruthTable]:
        """Random tables, every other one thinned by ANDing in two more so the counts vary."""
        tables = []
        for k in range(count):
            f = random_table(rng, n)
            if k % 2:
                f = TruthTable(n, f.bits & random_table(rng, n).bits & random_table(rng, n).bits)
            tables.append(f)
        return tables

    def _check_reduction(self, tables: list[TruthTable]) -> None:
        with_inf = CanonicalEngine(Method.HYBRID)
        without_inf = CanonicalEngine(Method.BASELINE_NO_INF)
        perm_before = perm_after = 0
        for f in tables:
            inf_counters = with_inf.canonicalize(f).counters
            baseline_counters = without_inf.canonicalize(f).counters
            assert inf_counters.final_enumerations <= baseline_counters.final_enumerations, to_hex(f)
            perm_before += inf_counters.perm_after_sym
            perm_after += inf_counters.perm_after_inf
        assert perm_after <= perm_before

    def test_influence_never_enumerates_more_than_baseline(self):
        self._check_reduction(self._corpus(Random(77), 60))

    @pytest.mark.slow
    def test_influence_reduction_on_a_thousand_functions(self):
        self._check_reduction(self._corpus(Random(2024), 1000))

    @pytest.mark.parametrize("method", PIPELINE)
    def test_selected_candidates_share_one_prefix(self, method, rng):
        engine = CanonicalEngine(method)
        for _ in range(20):
            states = engine.prepare(random_table(rng, 6))
            selected, distinct = select_phase_candidates(states, method)
            assert 1 <= len(selected) <= distinct
            assert len({c.prefix for c in selected}) == 1


class TestCanonicalForms:
    @pytest.mark.parametrize("method", PIPELINE)
    @pytest.mark.parametrize("policy", POLICIES)
    def test_two_input_classes(self, method, policy, two_input_tables):
        canonicals = {to_hex(canonicalize(f, method, policy=policy).canonical) for f in two_input_tables}
        assert canonicals == {"0", "1", "5", "6"}

    def test_one_input_classes(self):
        canonicals = {canonicalize(TruthTable(1, bits)).canonical for bits in range(4)}
        assert canonicals == {TruthTable(1, 0b00), TruthTable(1, 0b01)}

    def test_and_witness(self):
        result = canonicalize(TruthTable(2, 0x8))
        assert result.canonical == TruthTable(2, 0x1)
        assert result.witness.to_fields() == ("0", "3", "1-2")

    @pytest.mark.parametrize("method", PIPELINE)
    @pytest.mark.parametrize("policy", POLICIES)
    def test_witness_reaches_canonical(self, method, policy, rng):
        engine = CanonicalEngine(method, policy=policy)
        for n in range(1, 8):
            f = random_table(rng, n)
            result = engine.canonicalize(f)
            assert apply_transform(f, result.witness) == result.canonical

    @pytest.mark.parametrize("method", PIPELINE)
    def test_class_invariance(self, method, rng):
        engine = CanonicalEngine(method)
        for n in range(2, 8):
            for _ in range(3):
                f = random_table(rng, n)
                g = apply_transform(f, random_transform(rng, n))
                assert engine.canonicalize(f).canonical == engine.canonicalize(g).canonical

    @pytest.mark.parametrize("method", PIPELINE)
    def test_idempotent(self, method, rng):
        engine = CanonicalEngine(method)
        for n in range(2, 7):
            canonical = engine.canonicalize(random_table(rng, n)).canonical
            assert engine.canonicalize(canonical).canonical == canonical

    @pytest.mark.parametrize("method", PIPELINE)
    def test_stored_vector(self, method, rng):
        for n in range(1, 7):
            result = canonicalize(random_table(rng, n), method)
            assert signature_vector(result.canonical, method) == result.vector

    @pytest.mark.parametrize("method", PIPELINE)
    def test_six_input_fixtures(self, method, half_split, mixed_groups):
        engine = CanonicalEngine(method)
        for f in (half_split, mixed_groups):
            result = engine.canonicalize(f)
            assert apply_transform(f, result.witness) == result.canonical
            assert result.canonical.bits.bit_count() == 32

    def test_sixteen_inputs(self):
        f = TruthTable(16, 1 << 12345)
        result = canonicalize(f)
        assert result.canonical == TruthTable(16, 1)
        assert apply_transform(f, result.witness) == result.canonical

    def test_zero_inputs_rejected(self):
        with pytest.raises(TruthTableError):
            canonicalize(TruthTable(0, 1))

    def test_sers_base_checked(self):
        with pytest.raises(TruthTableError):
            CanonicalEngine(sers_base=1)

    def test_vector_rejects_exhaustive(self):
        with pytest.raises(MethodError):
            signature_vector(TruthTable(2, 0x8), Method.EXHAUSTIVE)


class TestExhaustive:
    def test_orbit_sizes(self):
        engine = CanonicalEngine(Method.EXHAUSTIVE)
        assert len(engine.orbit(TruthTable(2, 0x8))) == 8
        assert len(engine.orbit(TruthTable(2, 0xA))) == 4
        assert len(engine.orbit(TruthTable(2, 0x6))) == 2

    def test_cap(self):
        engine = CanonicalEngine(Method.EXHAUSTIVE, exhaustive_cap=3)
        with pytest.raises(MethodError):
            engine.canonicalize(TruthTable(4, 0x1234))

    def test_counters(self):
        counters = canonicalize(TruthTable(2, 0x8), Method.EXHAUSTIVE).counters
        assert counters.phase_after_cof == 4
        assert counters.perm_after_cof == 2
        assert counters.phase_candidates_selected == 8
        assert counters.final_enumerations == 16

    @pytest.mark.parametrize("method", PIPELINE)
    def test_oracle_agreement(self, method, rng):
        oracle = CanonicalEngine(Method.EXHAUSTIVE, vector_method=method)
        engine = CanonicalEngine(method)
        for n in (3, 4, 5):
            for _ in range(4):
                f = random_table(rng, n)
                expected = oracle.canonicalize(f)
                assert engine.canonicalize(f).canonical == expected.canonical
                assert apply_transform(f, expected.witness) == expected.canonical

    def test_orbit_seeding(self):
        cache = CanonicalCache()
        engine = CanonicalEngine(Method.EXHAUSTIVE, cache=cache)
        engine.canonicalize(TruthTable(2, 0x8))
        assert len(cache) == 8

        result = engine.canonicalize(TruthTable(2, 0xE))
        assert cache.get_stats()["hits"] == 1
        assert result.canonical == TruthTable(2, 0x1)
        assert apply_transform(TruthTable(2, 0xE), result.witness) == result.canonical


class TestCache:
    def test_pipeline_results_cached(self):
        cache = CanonicalCache()
        engine = CanonicalEngine(cache=cache)
        first = engine.canonicalize(TruthTable(3, 0xE8))
        assert engine.canonicalize(TruthTable(3, 0xE8)) is first
        assert cache.get_stats()["hits"] == 1

    def test_eviction_and_first_write_wins(self):
        cache = CanonicalCache(max_entries=2)
        cache.set("a", 1)
        cache.set("a", 2)
        cache.set("b", 3)
        cache.set("c", 4)
        assert cache.get("a") is None
        assert cache.get("b") == 3
        stats = cache.get_stats()
        assert stats["evictions"] == 1
        assert stats["total_entries"] == 2
        assert stats["misses"] == 1

    def test_hit_refreshes_recency(self):
        cache = CanonicalCache(max_entries=2)
        cache.set("a", 1)
        cache.set("b", 2)
        assert cache.get("a") == 1
        cache.set("c", 3)
        assert cache.get("b") is None
        assert cache.get("a") == 1
        assert cache.get("c") == 3

    def test_clear(self):
        cache = CanonicalCache()
        cache.set("a", 1)
        cache.invalidate("a")
        assert len(cache) == 0
        cache.set("b", 1)
        cache.get("b")
        cache.clear()
        assert cache.get_stats()["hits"] == 0
