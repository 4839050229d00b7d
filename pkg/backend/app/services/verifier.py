"""
Invariant suites for signatures and canonical forms.

Random trials draw each function and transform from their own seed, so any
violation can be replayed with ``check_trial(n, seed)``. Exhaustive sweeps
cover every table of a small input count and compare each pipeline method
against the brute-force oracle bit for bit.
"""
import logging
from random import Random
from typing import Optional, Sequence

from app.models.canonical import CanonicalResult, Method, SymmetryPolicy
from app.models.errors import InvariantViolation, NpnError
from app.models.truth_table import NpnTransform, TruthTable
from app.models.verification import VerificationReport, Violation
from app.services.canonical import CanonicalEngine, signature_vector
from app.services.canonical_cache import CanonicalCache
from app.services.signatures import influence_counts, sers_value
from app.services.truth_table import apply_transform, compose, invert
from app.utils.bits import cofactor_bits, full_mask

logger = logging.getLogger(__name__)

NPN_CLASS_COUNTS = {1: 2, 2: 4, 3: 14, 4: 222}
PIPELINE_METHODS = (Method.HYBRID, Method.OPTIMIZED, Method.BASELINE_NO_INF)
# 2^(2^n) tables; beyond 4 inputs only sampling is practical.
MAX_SWEEP_INPUTS = 4


def random_table(rng: Random, n: int) -> TruthTable:
    return TruthTable(n, rng.getrandbits(1 << n))


def random_transform(rng: Random, n: int) -> NpnTransform:
    return NpnTransform(rng.random() < 0.5, rng.getrandbits(n), tuple(rng.sample(range(n), n)))


class Verifier:
    """Runs the invariant suites for one configuration."""

    def __init__(
        self,
        methods: Sequence[Method] = PIPELINE_METHODS,
        sers_base: int = 3,
        policy: SymmetryPolicy = SymmetryPolicy.EXACT,
        exhaustive_cap: int = 6,
        seed: int = 20240101,
    ):
        self.methods = [Method(m) for m in methods if Method(m) != Method.EXHAUSTIVE]
        self.sers_base = sers_base
        self.policy = SymmetryPolicy(policy)
        self.exhaustive_cap = exhaustive_cap
        self.seed = seed
        self._engines = {m: CanonicalEngine(m, sers_base, self.policy, exhaustive_cap) for m in self.methods}
        self._oracles = {
            m: CanonicalEngine(Method.EXHAUSTIVE, sers_base, self.policy, exhaustive_cap,
                               vector_method=m, cache=CanonicalCache(1 << 20))
            for m in self.methods
        }

    def _fail(self, report: VerificationReport, check: str, n: int, seed: Optional[int], detail: str,
              exactness: bool = False) -> None:
        violation = Violation(check=check, n=n, seed=seed, detail=detail)
        if exactness and self.policy == SymmetryPolicy.REPRESENTATIVE:
            report.disagreements.append(violation)
        else:
            logger.error(f"{check} failed (n={n}, seed={seed}): {detail}")
            report.violations.append(violation)

    def run(self, n: int, samples: int = 0, exhaustive: bool = False) -> VerificationReport:
        """
        Verify canonical forms for n-input functions.

        The exhaustive sweep runs when requested and always for n <= 3.

        Raises:
            NpnError: a sweep requested above four inputs
        """
        if not 1 <= n <= 16:
            raise NpnError(f"input count {n} outside 1..16")
        sweep = exhaustive or n <= 3
        if sweep and n > MAX_SWEEP_INPUTS:
            raise NpnError(f"exhaustive sweep needs n <= {MAX_SWEEP_INPUTS}, got {n}")

        report = VerificationReport(
            n=n, samples=samples, seed=self.seed, policy=self.policy.value, exhaustive=sweep,
            expected_class_count=NPN_CLASS_COUNTS.get(n) if sweep else None,
        )
        if sweep:
            self.sweep(n, report)
        rng = Random(self.seed)
        for _ in range(samples):
            self.check_trial(n, rng.getrandbits(32), report)
        logger.info(f"verify n={n}: {sum(report.checks.values())} checks, {len(report.violations)} violations")
        return report

    def sweep(self, n: int, report: VerificationReport) -> None:
        """Every n-input table: oracle agreement per method and the class count."""
        class_counts = set()
        labels: dict[Method, list[int]] = {}
        for method in self.methods:
            engine, oracle = self._engines[method], self._oracles[method]
            canonicals = set()
            labels[method] = []
            for bits in range(1 << (1 << n)):
                f = TruthTable(n, bits)
                result = engine.canonicalize(f)
                expected = oracle.canonicalize(f)
                report.count(f"oracle_agreement[{method.value}]")
                if result.canonical != expected.canonical:
                    self._fail(report, f"oracle_agreement[{method.value}]", n, None,
                               f"{f}: pipeline {result.canonical}, oracle {expected.canonical}", exactness=True)
                if apply_transform(f, expected.witness) != expected.canonical:
                    self._fail(report, "oracle_witness", n, None, f"{f}: seeded witness is wrong")
                canonicals.add(result.canonical.bits)
                labels[method].append(result.canonical.bits)
            class_counts.add(len(canonicals))
            report.count(f"class_count[{method.value}]")
            expected_count = NPN_CLASS_COUNTS.get(n)
            if expected_count is not None and len(canonicals) != expected_count:
                self._fail(report, f"class_count[{method.value}]", n, None,
                           f"{len(canonicals)} classes, expected {expected_count}", exactness=True)
        if class_counts:
            report.class_count = min(class_counts) if len(class_counts) > 1 else class_counts.pop()
        self._check_partitions(n, labels, report)

    def _check_partitions(self, n: int, labels: dict[Method, list[int]], report: VerificationReport) -> None:
        """Every method must split the sweep into the same classes as the first one."""
        if len(labels) < 2:
            return
        (first, reference), *others = labels.items()
        for method, canonicals in others:
            report.count("partition_agreement")
            pairs = set(zip(reference, canonicals))
            if not len(pairs) == len(set(reference)) == len(set(canonicals)):
                self._fail(report, "partition_agreement", n, None,
                           f"{first.value} and {method.value} split the {n}-input tables differently",
                           exactness=True)

    def check_trial(self, n: int, seed: int, report: VerificationReport) -> None:
        """One random function and transform, checked against every invariant."""
        rng = Random(seed)
        f = random_table(rng, n)
        t = random_transform(rng, n)
        t2 = random_transform(rng, n)
        g = apply_transform(f, t)

        phase_only = NpnTransform(False, t.phase, tuple(range(n)))
        negated = TruthTable(n, f.bits ^ full_mask(n))
        inf_f = influence_counts(f.bits, n)

        report.count("influence_phase")
        if influence_counts(apply_transform(f, phase_only).bits, n) != inf_f:
            self._fail(report, "influence_phase", n, seed, f"{f} under phase {t.phase_text()}")
        report.count("influence_output")
        if influence_counts(negated.bits, n) != inf_f:
            self._fail(report, "influence_output", n, seed, str(f))
        report.count("influence_permutation")
        inf_g = influence_counts(g.bits, n)
        if any(inf_g[t.perm[i]] != inf_f[i] for i in range(n)):
            self._fail(report, "influence_permutation", n, seed, f"{f} -> {g} via {t.perm_text()}")

        report.count("cofactor_complement")
        total = f.bits.bit_count()
        if any(
            cofactor_bits(f.bits, n, i, True).bit_count() + cofactor_bits(f.bits, n, i, False).bit_count() != total
            for i in range(n)
        ):
            self._fail(report, "cofactor_complement", n, seed, str(f))

        report.count("sers_permutation")
        permuted = apply_transform(f, NpnTransform(False, 0, t.perm))
        if sers_value(permuted.bits, n, self.sers_base) != sers_value(f.bits, n, self.sers_base):
            self._fail(report, "sers_permutation", n, seed, f"{f} via {t.perm_text()}")

        report.count("transform_group_law")
        if apply_transform(g, invert(t)) != f or apply_transform(f, compose(t2, t)) != apply_transform(g, t2):
            self._fail(report, "transform_group_law", n, seed, f"{f} via {t.to_fields()}")

        results = {}
        for method in self.methods:
            results[method] = self._check_canonical(method, f, g, n, seed, report)

        with_inf, without_inf = results.get(Method.HYBRID), results.get(Method.BASELINE_NO_INF)
        if with_inf is not None and without_inf is not None and self.policy == SymmetryPolicy.EXACT:
            report.count("enumeration_reduction")
            if with_inf.counters.final_enumerations > without_inf.counters.final_enumerations:
                self._fail(report, "enumeration_reduction", n, seed,
                           f"{f}: inf enumerated {with_inf.counters.final_enumerations}, "
                           f"baseline {without_inf.counters.final_enumerations}")

    def _check_canonical(self, method: Method, f: TruthTable, g: TruthTable, n: int, seed: int,
                         report: VerificationReport) -> Optional[CanonicalResult]:
        engine = self._engines[method]
        try:
            rf = engine.canonicalize(f)
            rg = engine.canonicalize(g)
        except InvariantViolation as e:
            self._fail(report, f"pipeline[{method.value}]", n, seed, str(e))
            return None

        report.count(f"witness[{method.value}]")
        for table, result in ((f, rf), (g, rg)):
            if apply_transform(table, result.witness) != result.canonical:
                self._fail(report, f"witness[{method.value}]", n, seed, f"{table} does not reach {result.canonical}")

        report.count(f"class_invariance[{method.value}]")
        if rf.canonical != rg.canonical:
            self._fail(report, f"class_invariance[{method.value}]", n, seed,
                       f"{f} -> {rf.canonical} but transformed {g} -> {rg.canonical}", exactness=True)

        report.count(f"vector[{method.value}]")
        if signature_vector(rf.canonical, method, self.policy, self.sers_base) != rf.vector:
            self._fail(report, f"vector[{method.value}]", n, seed, f"stored vector of {rf.canonical} is stale")

        report.count(f"idempotence[{method.value}]")
        if engine.canonicalize(rf.canonical).canonical != rf.canonical:
            self._fail(report, f"idempotence[{method.value}]", n, seed, f"{rf.canonical} is not a fixed point",
                       exactness=True)

        if n <= min(self.exhaustive_cap, 5):
            report.count(f"oracle_agreement[{method.value}]")
            expected = self._oracles[method].canonicalize(f)
            if expected.canonical != rf.canonical:
                self._fail(report, f"oracle_agreement[{method.value}]", n, seed,
                           f"{f}: pipeline {rf.canonical}, oracle {expected.canonical}", exactness=True)
        return rf
