"""Monogamy checks: CKW, arbitrary-partition CKW, residual tangle, N^2 and R^2 monogamy."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .convexroof import RoofBracket, RoofConfig, certified_tangle
from .measures import (
    negativity,
    pure_tangle,
    realignment_measure,
    wootters_concurrence,
)
from .qstate import DensityMatrix, Partition, PureState, partial_trace
from .states import (
    MixedFamilySpec,
    random_pure,
    random_w_class,
    mixed_family,
    w_class,
)

EXACT_TOL = 1e-9
SATURATION_TOL = 1e-6


class Verdict(str, Enum):
    HOLDS = "holds"
    SATURATED = "saturated"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


Term = float | RoofBracket


def _bounds(term: Term) -> tuple[float, float, bool]:
    if isinstance(term, RoofBracket):
        return term.lower, term.upper, term.certified
    return float(term), float(term), True


@dataclass(frozen=True)
class MonogamyReport:
    """lhs >= sum(rhs) bookkeeping.

    ``slack`` is the conservative end ``lhs.lower - sum(rhs.upper)``; ``slack_max``
    is the optimistic end. They coincide when every term is exact.
    """

    lhs: Term
    rhs_terms: tuple
    slack: float
    slack_max: float
    verdict: Verdict
    tolerance: float
    saturation_tolerance: float
    context: dict = field(default_factory=dict, compare=False)

    @property
    def rhs_total(self) -> float:
        return sum(_bounds(t)[1] for _, t in self.rhs_terms)


def make_report(lhs: Term, rhs_terms: Sequence[tuple[str, Term]], tolerance: float = EXACT_TOL,
                saturation_tolerance: float = SATURATION_TOL, context: dict | None = None
                ) -> MonogamyReport:
    lo, hi, cert = _bounds(lhs)
    rhs_lo = rhs_hi = 0.0
    for _, t in rhs_terms:
        t_lo, t_hi, t_cert = _bounds(t)
        rhs_lo += t_lo
        rhs_hi += t_hi
        cert = cert and t_cert
    slack_min, slack_max = lo - rhs_hi, hi - rhs_lo
    if cert and max(abs(slack_min), abs(slack_max)) < saturation_tolerance:
        verdict = Verdict.SATURATED
    elif slack_min >= -tolerance:
        verdict = Verdict.HOLDS
    elif cert and slack_max < -tolerance:
        verdict = Verdict.VIOLATED
    else:
        verdict = Verdict.INCONCLUSIVE
    return MonogamyReport(lhs, tuple(rhs_terms), float(slack_min), float(slack_max), verdict,
                          tolerance, saturation_tolerance, dict(context or {}))


def _two_qubit_tangle(state, focus: int, j: int) -> float:
    return wootters_concurrence(partial_trace(state, {focus, j})).value ** 2


def check_ckw(state: PureState, focus: int) -> MonogamyReport:
    n = state.n_qubits
    if n < 2:
        raise ValueError("CKW check needs at least two qubits")
    if not 0 <= focus < n:
        raise ValueError(f"focus {focus} out of range for {n} qubits")
    lhs = pure_tangle(state, {focus}).value
    rhs = [(f"{focus},{j}", _two_qubit_tangle(state, focus, j)) for j in range(n) if j != focus]
    return make_report(lhs, rhs, context={"check": "ckw", "focus": focus})


def check_ckw_mixed(spec: MixedFamilySpec, cfg: RoofConfig | None = None) -> MonogamyReport:
    """Roof bracket of the mixture against the pairwise terms 4 p^2 |a|^2 |b_j|^2."""
    lhs = certified_tangle(mixed_family(spec), 0, cfg)
    a2 = abs(spec.w.a) ** 2
    rhs = [(f"0,{j}", 4.0 * spec.p**2 * a2 * abs(bj) ** 2) for j, bj in enumerate(spec.w.b, start=1)]
    return make_report(lhs, rhs, context={"check": "ckw_mixed", "p": spec.p})


def _block_terms(state: PureState | DensityMatrix, partition: Partition, cfg: RoofConfig | None):
    terms = []
    for name, qubits in partition.blocks:
        if len(qubits) == 1:
            # two-qubit tangle equals the squared Wootters concurrence
            terms.append((name, _two_qubit_tangle(state, partition.focus, qubits[0])))
            continue
        keep = sorted({partition.focus, *qubits})
        reduced = partial_trace(state, keep)
        terms.append((name, certified_tangle(reduced, keep.index(partition.focus), cfg)))
    return terms


def check_generalized(state: PureState, partition: Partition,
                      cfg: RoofConfig | None = None) -> MonogamyReport:
    """tau(A : everything else) >= sum over blocks X of tau(A : X)."""
    partition.validate(state.n_qubits)
    lhs = pure_tangle(state, {partition.focus}).value
    return make_report(lhs, _block_terms(state, partition, cfg),
                       context={"check": "generalized", "partition": str(partition)})


def check_generalized_mixed(rho: DensityMatrix, partition: Partition,
                            cfg: RoofConfig | None = None) -> MonogamyReport:
    """Partition check for a mixed state; the left side is a roof bracket as well."""
    partition.validate(rho.n_qubits)
    lhs = certified_tangle(rho, partition.focus, cfg)
    return make_report(lhs, _block_terms(rho, partition, cfg),
                       context={"check": "generalized_mixed", "partition": str(partition)})


def residual_tangle(state: PureState, partition: Partition, cfg: RoofConfig | None = None) -> float:
    """Conservative residual (higher) tangle; the three-tangle for 3 qubits with singleton blocks."""
    return check_generalized(state, partition, cfg).slack


def check_measure_monogamy(state: PureState, partition: Partition, kind: str) -> MonogamyReport:
    """Squared negativity or realignment measure in place of the tangle."""
    if kind == "negativity":
        fn = negativity
    elif kind == "realignment":
        fn = realignment_measure
    else:
        raise ValueError(f"kind must be 'negativity' or 'realignment', got {kind!r}")
    partition.validate(state.n_qubits)
    focus = partition.focus
    lhs = fn(state, {focus}).value ** 2
    rhs = []
    for name, qubits in partition.blocks:
        keep = sorted({focus, *qubits})
        reduced = partial_trace(state, keep)
        rhs.append((name, fn(reduced, {keep.index(focus)}).value ** 2))
    return make_report(lhs, rhs, context={"check": kind, "partition": str(partition)})


def shape_partition(block_sizes: Iterable[int]) -> Partition:
    """Focus 0 followed by consecutive blocks of the given sizes."""
    blocks, start = [], 1
    for size in block_sizes:
        if size < 1:
            raise ValueError("block sizes must be >= 1")
        blocks.append(tuple(range(start, start + size)))
        start += size
    return Partition(0, blocks)


def conjecture_search(n: int, partition_shapes: Sequence[Sequence[int]], samples: int,
                      cfg: RoofConfig | None = None, seed: int = 0,
                      w_class_only: bool = False) -> list[MonogamyReport]:
    """Run the partition check on random n-qubit pure states, smallest slack first."""
    if not 2 <= n <= 8:
        raise ValueError(f"conjecture search supports 2..8 qubits, got {n}")
    partitions = [shape_partition(s) for s in partition_shapes]
    for part in partitions:
        part.validate(n)
    reports = []
    for i in range(samples):
        sample_seed = np.random.SeedSequence([seed, i])
        if w_class_only:
            state = w_class(random_w_class(n - 1, sample_seed))
        else:
            state = random_pure(n, sample_seed)
        for part in partitions:
            rep = check_generalized(state, part, cfg)
            rep.context.update(sample=i, seed=seed)
            reports.append(rep)
    reports.sort(key=lambda r: (r.slack, r.context["sample"], r.context["partition"]))
    return reports


def violations(reports: Iterable[MonogamyReport]) -> list[MonogamyReport]:
    return [r for r in reports if r.verdict is Verdict.VIOLATED]


def inconclusive(reports: Iterable[MonogamyReport]) -> list[MonogamyReport]:
    return [r for r in reports if r.verdict is Verdict.INCONCLUSIVE]


__all__ = [
    "Verdict", "MonogamyReport", "Partition", "make_report", "check_ckw", "check_ckw_mixed",
    "check_generalized", "check_generalized_mixed", "residual_tangle", "check_measure_monogamy", "conjecture_search",
    "shape_partition", "violations", "inconclusive"
]
