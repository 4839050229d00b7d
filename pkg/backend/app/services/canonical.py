"""
Influence-aided NPN canonical forms.

The pipeline narrows the orbit of f stage by stage: output polarity,
cofactor grouping and phase, symmetry, influence refinement, phase
selection, and a final enumeration of what is left. Each stage keeps every
transform that can still reach the lexicographic minimum of the signature
vector, so the returned table is the minimum over the whole NPN class and
the exhaustive oracle reproduces it exactly.
"""
import logging
from itertools import chain, permutations, product
from math import factorial
from time import perf_counter
from typing import Iterator, Optional, Sequence

from app.models.canonical import (
    STAGES,
    CanonicalResult,
    ClassificationState,
    Method,
    PhaseCandidate,
    SignatureVector,
    StageCounters,
    SymmetryPolicy,
    VarGroup,
)
from app.models.errors import InvariantViolation, MethodError, TruthTableError
from app.models.truth_table import NpnTransform, TruthTable
from app.services.signatures import (
    cofactor_counts,
    influence_counts,
    sers_value,
    shifted_cofactor_counts,
)
from app.services.symmetry import symmetry_classes
from app.services.truth_table import compose, invert, transform_bits
from app.utils.bits import full_mask, multinomial, negate_vars, permute_vars

logger = logging.getLogger(__name__)

_USES_SCC_BLOCK = (Method.HYBRID, Method.BASELINE_NO_INF)


def decide_polarity(f: TruthTable) -> list[tuple[bool, TruthTable]]:
    """
    Output polarities that minimize the satisfy count.

    Returns:
        (out_neg, polarity-normalized table) pairs; two when |f| is exactly half
    """
    ones = f.bits.bit_count()
    if 2 * ones < f.size:
        return [(False, f)]
    negated = TruthTable(f.n, f.bits ^ full_mask(f.n))
    if 2 * ones > f.size:
        return [(True, negated)]
    return [(False, f), (True, negated)]


def _split(groups: Sequence[VarGroup], values: Sequence[int]) -> list[VarGroup]:
    """Split every group by a per-variable value, sub-groups ascending."""
    refined = []
    for group in groups:
        buckets: dict[int, list[int]] = {}
        for var in group.members:
            buckets.setdefault(values[var], []).append(var)
        for value in sorted(buckets):
            members = tuple(buckets[value])
            classes = [cls for cls in group.classes if cls[0] in members]
            refined.append(VarGroup(group.key + (value,), members, classes))
    return refined


def group_and_phase_by_cofactor(f: TruthTable, out_neg: bool = False) -> ClassificationState:
    """
    Fix the phase of every input whose cofactor count differs from |f|/2
    and group inputs by phase-adjusted cofactor value.

    Args:
        f: Polarity-normalized table
        out_neg: Output polarity that produced `f`, carried into the witness

    Returns:
        State holding the phase-adjusted table, U_phase and the ordered groups
    """
    n, bits = f.n, f.bits
    total = bits.bit_count()
    constant = total in (0, f.size)
    counts = cofactor_counts(bits, n)

    phase_mask = 0
    u_phase = []
    adjusted = []
    for i, c in enumerate(counts):
        if 2 * c > total:
            phase_mask |= 1 << i
        elif 2 * c == total and not constant:
            u_phase.append(i)
        adjusted.append(min(c, total - c))

    groups = _split([VarGroup((), tuple(range(n)))], adjusted)
    return ClassificationState(
        n=n,
        out_neg=out_neg,
        bits=negate_vars(bits, n, phase_mask),
        phase_mask=phase_mask,
        u_phase=tuple(u_phase),
        groups=groups,
        constant=constant,
    )


def collapse_symmetry(state: ClassificationState) -> ClassificationState:
    """Partition every group into symmetry classes of the phase-adjusted table."""
    for group in state.groups:
        group.classes = symmetry_classes(state.bits, state.n, group.members)
    return state


def refine_by_influence(state: ClassificationState, f: Optional[TruthTable] = None) -> ClassificationState:
    """
    Split groups by influence, ascending.

    Influence ignores input and output negation, so it is read from the
    phase-adjusted table unless `f` is given.
    """
    source = f.bits if f is not None else state.bits
    state.groups = _split(state.groups, influence_counts(source, state.n))
    return state


def phase_count(state: ClassificationState, policy: SymmetryPolicy, use_symmetry: bool = True) -> int:
    if not use_symmetry:
        return 1 << len(state.u_phase)
    undetermined = set(state.u_phase)
    count = 1
    for group in state.groups:
        for cls in group.classes:
            if cls[0] in undetermined:
                count *= len(cls) + 1 if policy == SymmetryPolicy.EXACT else 2
    return count


def permutation_count(groups: Sequence[VarGroup], policy: SymmetryPolicy, constant: bool = False) -> int:
    """Arrangements the final enumeration would visit for these groups."""
    if constant:
        return 1
    count = 1
    for group in groups:
        if policy == SymmetryPolicy.EXACT:
            count *= multinomial(len(cls) for cls in group.classes)
        else:
            count *= factorial(len(group.classes))
    return count


def _phase_assignments(state: ClassificationState, policy: SymmetryPolicy) -> list[int]:
    """Phase masks over U_phase, one per multiset of negations in each symmetry class."""
    undetermined = set(state.u_phase)
    choices = []
    for group in state.groups:
        for cls in group.classes:
            if cls[0] not in undetermined:
                continue
            if policy == SymmetryPolicy.EXACT:
                options, mask = [0], 0
                for var in cls:
                    mask |= 1 << var
                    options.append(mask)
            else:
                options = [0, 1 << cls[0]]
            choices.append(options)
    masks = []
    for combo in product(*choices):
        mask = 0
        for part in combo:
            mask |= part
        masks.append(mask)
    return masks


def _class_cost(classes_per_group: Sequence[Sequence[tuple[int, ...]]], policy: SymmetryPolicy) -> int:
    cost = 1
    for classes in classes_per_group:
        if policy == SymmetryPolicy.EXACT:
            cost *= multinomial(len(cls) for cls in classes)
        else:
            cost *= factorial(len(classes))
    return cost


def _phase_candidate(
    state: ClassificationState,
    assignment: int,
    bits: int,
    method: Method,
    policy: SymmetryPolicy,
    base: int,
) -> PhaseCandidate:
    n = state.n
    groups = state.groups
    if method in _USES_SCC_BLOCK:
        groups = _split(groups, shifted_cofactor_counts(bits, n, base))

    if state.constant:
        classes = [[group.members] for group in groups]
    else:
        classes = [symmetry_classes(bits, n, group.members) for group in groups]
    cost = _class_cost(classes, policy)
    s0 = sers_value(bits, n, base)

    if method in _USES_SCC_BLOCK:
        s1_block = tuple(chain.from_iterable([g.key[-1]] * g.size for g in groups))
        prefix = (cost, s0) + s1_block
    else:
        prefix = (s0,)
    return PhaseCandidate(
        out_neg=state.out_neg,
        phase=state.phase_mask | assignment,
        bits=bits,
        cost=cost,
        prefix=prefix,
        subgroups=tuple(tuple(c) for c in classes),
    )


def select_phase_candidates(
    states: Sequence[ClassificationState] | ClassificationState,
    method: Method = Method.OPTIMIZED,
    policy: SymmetryPolicy = SymmetryPolicy.EXACT,
    base: int = 3,
) -> tuple[list[PhaseCandidate], int]:
    """
    Enumerate phase assignments over U_phase and keep the minimizers.

    Candidates are ranked by their prefix: (C_p, S0, S1 block) for HYBRID
    and BASELINE_NO_INF, (S0,) for OPTIMIZED. The prefix is fixed across a
    candidate's arrangements, so only minimal-prefix candidates can win the
    final enumeration. Ties are all kept. Assignments yielding the same table are merged.

    Returns:
        (selected candidates, number of distinct phase-assigned tables)
    """
    if isinstance(states, ClassificationState):
        states = [states]
    if method == Method.EXHAUSTIVE:
        raise MethodError("exhaustive canonicalization has no phase-selection stage")

    seen: set[int] = set()
    candidates = []
    for state in states:
        for assignment in _phase_assignments(state, policy):
            bits = negate_vars(state.bits, state.n, assignment)
            if bits in seen:
                continue
            seen.add(bits)
            candidates.append(_phase_candidate(state, assignment, bits, method, policy, base))

    best = min(c.prefix for c in candidates)
    selected = [c for c in candidates if c.prefix == best]
    return selected, len(candidates)


def _distinct_orders(classes: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Distinct arrangements of interchangeable class members over the group's positions."""
    counts = [len(cls) for cls in classes]
    size = sum(counts)
    labels: list[int] = []
    orders = []

    def walk():
        if len(labels) == size:
            taken = [0] * len(classes)
            order = []
            for k in labels:
                order.append(classes[k][taken[k]])
                taken[k] += 1
            orders.append(tuple(order))
            return
        for k, left in enumerate(counts):
            if left:
                counts[k] -= 1
                labels.append(k)
                walk()
                labels.pop()
                counts[k] += 1

    walk()
    return orders


def _block_orders(classes: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    return [tuple(chain.from_iterable(classes[k] for k in order)) for order in permutations(range(len(classes)))]


def arrangements(candidate: PhaseCandidate, policy: SymmetryPolicy) -> Iterator[tuple[int, ...]]:
    """
    Position orders (variable per position) visited by the final enumeration.

    Groups occupy consecutive positions in order; only variables of the same
    group trade places.
    """
    arrange = _distinct_orders if policy == SymmetryPolicy.EXACT else _block_orders
    per_group = [arrange(classes) for classes in candidate.subgroups]
    for parts in product(*per_group):
        yield tuple(chain.from_iterable(parts))


def _order_to_perm(order: Sequence[int]) -> tuple[int, ...]:
    perm = [0] * len(order)
    for pos, var in enumerate(order):
        perm[var] = pos
    return tuple(perm)


def signature_vector(
    g: TruthTable,
    method: Method = Method.OPTIMIZED,
    policy: SymmetryPolicy = SymmetryPolicy.EXACT,
    base: int = 3,
) -> SignatureVector:
    """
    Signature vector of a table as it stands, without any transform.

    HYBRID:          |g|, cofactors, influences, C_p, S0, S1, T
    OPTIMIZED:       |g|, cofactors, influences, S0, T
    BASELINE_NO_INF: |g|, cofactors, C_p, S0, S1, T

    C_p groups positions by equal signature values and counts the
    arrangements of g's symmetry classes inside each group.
    """
    if method == Method.EXHAUSTIVE:
        raise MethodError("exhaustive search minimizes the vector of another method")
    n, bits = g.n, g.bits
    total = bits.bit_count()
    cof = cofactor_counts(bits, n)
    s0 = sers_value(bits, n, base)

    if method == Method.OPTIMIZED:
        inf = influence_counts(bits, n)
        return SignatureVector((total, *cof, *inf, s0, bits), method)

    s1 = shifted_cofactor_counts(bits, n, base)
    if method == Method.HYBRID:
        inf = influence_counts(bits, n)
        keys = [(cof[i], inf[i], s1[i]) for i in range(n)]
    else:
        inf = ()
        keys = [(cof[i], s1[i]) for i in range(n)]
    buckets: dict[tuple[int, ...], list[int]] = {}
    for var in range(n):
        buckets.setdefault(keys[var], []).append(var)
    if total in (0, g.size):
        cost = 1
    else:
        cost = _class_cost([symmetry_classes(bits, n, members) for members in buckets.values()], policy)
    return SignatureVector((total, *cof, *inf, cost, s0, *s1, bits), method)


class CanonicalEngine:
    """
    Canonicalizer configured with one method, SERS base and symmetry policy.

    An optional result cache (see canonical_cache) short-circuits repeated
    tables; the exhaustive oracle fills it with its whole orbit.
    """

    def __init__(
        self,
        method: Method = Method.OPTIMIZED,
        sers_base: int = 3,
        policy: SymmetryPolicy = SymmetryPolicy.EXACT,
        exhaustive_cap: int = 6,
        vector_method: Method = Method.HYBRID,
        cache=None,
    ):
        if sers_base < 2:
            raise TruthTableError(f"SERS base must be at least 2, got {sers_base}")
        if vector_method == Method.EXHAUSTIVE:
            raise MethodError("the exhaustive oracle needs a pipeline method's vector")
        self.method = Method(method)
        self.sers_base = sers_base
        self.policy = SymmetryPolicy(policy)
        self.exhaustive_cap = exhaustive_cap
        self.vector_method = Method(vector_method)
        self.cache = cache

    @classmethod
    def from_settings(cls, settings, method: Optional[Method] = None, cache=None) -> "CanonicalEngine":
        return cls(
            method=method or settings.method,
            sers_base=settings.sers_base,
            policy=settings.symmetry_policy,
            exhaustive_cap=settings.exhaustive_cap,
            cache=cache,
        )

    def cache_key(self, f: TruthTable) -> tuple:
        return (f.n, f.bits, self.method.value, self.sers_base, self.policy.value,
                self.vector_method.value if self.method == Method.EXHAUSTIVE else "")

    def prepare(
        self,
        f: TruthTable,
        timings: Optional[dict[str, float]] = None,
        counters: Optional[StageCounters] = None,
    ) -> list[ClassificationState]:
        """
        Run polarity, cofactor, symmetry and influence stages for every polarity candidate.

        Counters, when given, receive the per-candidate stage counts.
        """
        timings = timings if timings is not None else dict.fromkeys(STAGES, 0.0)
        refine = self._pipeline_method() != Method.BASELINE_NO_INF

        start = perf_counter()
        polarities = decide_polarity(f)
        timings["polarity"] += perf_counter() - start

        states = []
        for out_neg, g in polarities:
            start = perf_counter()
            state = group_and_phase_by_cofactor(g, out_neg)
            mid = perf_counter()
            timings["cofactor"] += mid - start
            if counters is not None and not states:
                counters.phase_after_cof = phase_count(state, self.policy, use_symmetry=False)
                counters.perm_after_cof = permutation_count(state.groups, self.policy, state.constant)

            collapse_symmetry(state)
            after_sym = perf_counter()
            timings["symmetry"] += after_sym - mid
            if counters is not None and not states:
                counters.phase_after_sym = phase_count(state, self.policy)
                counters.perm_after_sym = permutation_count(state.groups, self.policy, state.constant)

            if refine:
                refine_by_influence(state)
            timings["influence"] += perf_counter() - after_sym
            if counters is not None and not states:
                counters.perm_after_inf = permutation_count(state.groups, self.policy, state.constant)
            states.append(state)

        if counters is not None:
            counters.polarity_candidates = len(states)
        return states

    def _pipeline_method(self) -> Method:
        return self.vector_method if self.method == Method.EXHAUSTIVE else self.method

    def canonicalize(self, f: TruthTable) -> CanonicalResult:
        """
        Canonical form of f under the configured method.

        Raises:
            TruthTableError: f has no inputs
            MethodError: exhaustive search beyond the configured input cap
        """
        if f.n < 1:
            raise TruthTableError("canonicalization needs at least one input")
        if self.cache is not None:
            hit = self.cache.get(self.cache_key(f))
            if hit is not None:
                return hit

        if self.method == Method.EXHAUSTIVE:
            result, orbit = self.exhaustive(f)
            if self.cache is not None:
                for member, witness in orbit:
                    self.cache.set(self.cache_key(member), result.with_witness(witness))
            return result

        result = self._run_pipeline(f)
        if self.cache is not None:
            self.cache.set(self.cache_key(f), result)
        return result

    def _run_pipeline(self, f: TruthTable) -> CanonicalResult:
        n = f.n
        method = self.method
        timings = dict.fromkeys(STAGES, 0.0)
        counters = StageCounters()
        states = self.prepare(f, timings, counters)

        start = perf_counter()
        selected, distinct = select_phase_candidates(states, method, self.policy, self.sers_base)
        timings["phase_selection"] = perf_counter() - start
        counters.phase_candidates_selected = len(selected)

        start = perf_counter()
        best_key = None
        best = None
        visited = 0
        for candidate in selected:
            for order in arrangements(candidate, self.policy):
                visited += 1
                perm = _order_to_perm(order)
                table = permute_vars(candidate.bits, n, perm)
                key = (candidate.prefix, table)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (candidate, perm)
        timings["final_enumeration"] = perf_counter() - start
        counters.final_enumerations = visited

        candidate, perm = best
        canonical_bits = best_key[1]
        witness = NpnTransform(candidate.out_neg, candidate.phase, perm)
        if transform_bits(f.bits, n, witness) != canonical_bits:
            raise InvariantViolation(f"witness does not reproduce the canonical table of {f}")
        counters.check()

        cof = cofactor_counts(canonical_bits, n)
        inf = () if method == Method.BASELINE_NO_INF else influence_counts(canonical_bits, n)
        vector = SignatureVector(
            (canonical_bits.bit_count(), *cof, *inf, *candidate.prefix, canonical_bits), method
        )
        logger.debug(
            f"{f} -> {TruthTable(n, canonical_bits)} [{method.value}] "
            f"phases {counters.phase_after_sym}/{counters.phase_after_cof} "
            f"perms {counters.perm_after_inf}/{counters.perm_after_cof} "
            f"selected {len(selected)}/{distinct} enum {visited}"
        )
        return CanonicalResult(
            canonical=TruthTable(n, canonical_bits),
            witness=witness,
            vector=vector,
            counters=counters,
            method=method,
            timings=timings,
            group_sizes=tuple(g.size for g in states[0].groups),
        )

    def signature_vector(self, g: TruthTable) -> SignatureVector:
        return signature_vector(g, self._pipeline_method(), self.policy, self.sers_base)

    def orbit(self, f: TruthTable) -> dict[int, NpnTransform]:
        """
        Every distinct table of the NPN class of f, each with one transform reaching it.

        Raises:
            MethodError: n above the exhaustive cap
        """
        n = f.n
        if n > self.exhaustive_cap:
            raise MethodError(
                f"exhaustive search over {n} inputs exceeds the cap of {self.exhaustive_cap}"
            )
        full = full_mask(n)
        members: dict[int, NpnTransform] = {}
        for perm in permutations(range(n)):
            for phase in range(1 << n):
                bits = permute_vars(negate_vars(f.bits, n, phase), n, perm)
                if bits not in members:
                    members[bits] = NpnTransform(False, phase, perm)
                if bits ^ full not in members:
                    members[bits ^ full] = NpnTransform(True, phase, perm)
        return members

    def exhaustive(self, f: TruthTable) -> tuple[CanonicalResult, list[tuple[TruthTable, NpnTransform]]]:
        """
        Brute-force minimum of the vector over all 2^(n+1)·n! transforms.

        Returns:
            The canonical result and the orbit as (member, witness to canonical) pairs
        """
        n = f.n
        start = perf_counter()
        members = self.orbit(f)

        # Cheap leading blocks first; the full vector only for their minimizers.
        with_inf = self._pipeline_method() != Method.BASELINE_NO_INF

        def lead(bits: int) -> tuple:
            head = (bits.bit_count(), cofactor_counts(bits, n))
            return head + (influence_counts(bits, n),) if with_inf else head

        leads = {bits: lead(bits) for bits in members}
        smallest = min(leads.values())
        vector, canonical_bits = min(
            (self.signature_vector(TruthTable(n, bits)), bits)
            for bits, key in leads.items() if key == smallest
        )
        witness = members[canonical_bits]

        transforms = (1 << (n + 1)) * factorial(n)
        counters = StageCounters(
            polarity_candidates=2,
            phase_after_cof=1 << n,
            phase_after_sym=1 << n,
            perm_after_cof=factorial(n),
            perm_after_sym=factorial(n),
            perm_after_inf=factorial(n),
            phase_candidates_selected=1 << (n + 1),
            final_enumerations=transforms,
        )
        timings = dict.fromkeys(STAGES, 0.0)
        timings["final_enumeration"] = perf_counter() - start

        states = self.prepare(f)
        result = CanonicalResult(
            canonical=TruthTable(n, canonical_bits),
            witness=witness,
            vector=vector,
            counters=counters,
            method=Method.EXHAUSTIVE,
            timings=timings,
            group_sizes=tuple(g.size for g in states[0].groups),
        )
        orbit = [
            (TruthTable(n, bits), compose(witness, invert(t)))
            for bits, t in members.items()
        ]
        logger.debug(f"{f} -> {result.canonical} [exhaustive] orbit of {len(orbit)} tables")
        return result, orbit


def canonicalize(
    f: TruthTable,
    method: Method = Method.OPTIMIZED,
    sers_base: int = 3,
    policy: SymmetryPolicy = SymmetryPolicy.EXACT,
    exhaustive_cap: int = 6,
) -> CanonicalResult:
    """Canonical form of f; see CanonicalEngine for the knobs."""
    return CanonicalEngine(method, sers_base, policy, exhaustive_cap).canonicalize(f)


def stage_counters(
    f: TruthTable,
    method: Method = Method.OPTIMIZED,
    policy: SymmetryPolicy = SymmetryPolicy.EXACT,
) -> StageCounters:
    """Per-stage enumeration counts recorded while canonicalizing f."""
    return canonicalize(f, method, policy=policy).counters
