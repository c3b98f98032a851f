"""Acceptance criteria, each at its stated tolerance and runtime budget.

Every test records one PASS/FAIL line, printed in the "acceptance criteria"
section of the pytest terminal summary.
"""
import json
import time

import numpy as np
import pytest

from tanglekit import cli
from tanglekit.convexroof import certified_tangle, effective_members, optimize_roof
from tanglekit.measures import (
    mixed_family_tangle,
    negativity,
    pure_tangle,
    realignment_measure,
    wootters_concurrence,
)
from tanglekit.monogamy import (
    Verdict,
    check_ckw,
    check_generalized,
    check_measure_monogamy,
    conjecture_search,
    inconclusive,
    violations,
)
from tanglekit.qstate import Partition
from tanglekit.states import (
    MixedFamilySpec,
    WClassSpec,
    mixed_family,
    random_mixed,
    random_partitioned_w,
    random_pure,
    random_w_class,
    reduced_block_analytic,
    w_class,
    w_partitioned,
)

from conftest import record_acceptance

S3, S5 = 1 / np.sqrt(3), 1 / np.sqrt(5)


def seq(*keys):
    return np.random.SeedSequence(list(keys))


def verdict(label, ok, detail, elapsed, budget):
    ok = ok and elapsed < budget
    record_acceptance(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}; {elapsed:.2f} s (budget {budget} s)")
    return ok


def test_c1_five_qubit_full_cut():
    t0 = time.perf_counter()
    tau = pure_tangle(w_class(WClassSpec(S5, [S5] * 4)), {0}).value
    err = abs(tau - 16 / 25)
    assert verdict("C1 five-qubit W, A|rest tangle = 16/25", err < 1e-12,
                   f"tau = {tau:.15f}, |err| = {err:.1e}", time.perf_counter() - t0, 1.0)


def test_c2_five_qubit_block_cut():
    t0 = time.perf_counter()
    spec = MixedFamilySpec(WClassSpec(S3, [S3, S3]), 3 / 5)
    b = certified_tangle(mixed_family(spec), 0)
    ok = b.certified and b.gap < 1e-6 and b.contains(8 / 25, 1e-9)
    assert verdict("C2 block cut certified bracket contains 8/25", ok,
                   f"[{b.lower:.12f}, {b.upper:.12f}], gap {b.gap:.1e}",
                   time.perf_counter() - t0, 10.0)


@pytest.mark.slow
def test_c3_mixed_family_grid():
    t0 = time.perf_counter()
    worst, most_members, uncertified, count = 0.0, 0, 0, 0
    for n in (2, 3, 4):
        for s in range(30):
            w = random_w_class(n, seq(3, n, s))
            for p in np.arange(1, 11) / 10:
                spec = MixedFamilySpec(w, float(p))
                b = certified_tangle(mixed_family(spec), 0)
                worst = max(worst, abs(b.upper - mixed_family_tangle(spec).value))
                most_members = max(most_members, effective_members(b.witness))
                uncertified += not b.certified
                count += 1
    ok = worst < 1e-6 and most_members <= 3 and uncertified == 0
    assert verdict("C3 mixed-family grid", ok,
                   f"{count} cases, max |roof - formula| {worst:.1e}, uncertified {uncertified},"
                   f" max witness members {most_members}", time.perf_counter() - t0, 300.0)


def test_c4_ckw_property_suite():
    t0 = time.perf_counter()
    worst = np.inf
    for s in range(500):
        n = 3 + s % 4
        psi = random_pure(n, seq(4, s))
        worst = min(worst, min(check_ckw(psi, f).slack for f in range(n)))
    worst_w = 0.0
    for s in range(100):
        n = 3 + s % 4
        psi = w_class(random_w_class(n - 1, seq(44, s)))
        worst_w = max(worst_w, max(abs(check_ckw(psi, f).slack) for f in range(n)))
    ok = worst >= -1e-9 and worst_w < 1e-12
    assert verdict("C4 CKW on random pure states, W-class saturation", ok,
                   f"min slack {worst:.3e}, max |W-class slack| {worst_w:.1e}",
                   time.perf_counter() - t0, 60.0)


def test_c5_generalized_partition_saturation():
    t0 = time.perf_counter()
    gen = np.random.default_rng(5)
    worst, not_saturated = 0.0, 0
    for s in range(100):
        sizes = tuple(int(k) for k in gen.integers(1, 4, size=2 + s % 2))
        spec = random_partitioned_w(sizes, seq(5, s))
        state, part = w_partitioned(spec)
        rep = check_generalized(state, part)
        not_saturated += rep.verdict is not Verdict.SATURATED
        # closed-form route through the reduced mixed-family blocks
        analytic = sum(mixed_family_tangle(reduced_block_analytic(spec, name)).value
                       for name, _ in part.blocks)
        lhs = pure_tangle(state, {0}).value
        worst = max(worst, abs(lhs - analytic), abs(rep.slack))
    ok = not_saturated == 0 and worst < 1e-6
    assert verdict("C5 partitioned W states saturate the partition inequality", ok,
                   f"not saturated {not_saturated}/100, max |slack| {worst:.1e}",
                   time.perf_counter() - t0, 120.0)


def test_c6_measure_monogamy():
    t0 = time.perf_counter()
    worst_mono = np.inf
    for s in range(200):
        psi = random_pure(3, seq(6, s))
        for focus in range(3):
            part = Partition(focus, [(q,) for q in range(3) if q != focus])
            for kind in ("negativity", "realignment"):
                worst_mono = min(worst_mono, check_measure_monogamy(psi, part, kind).slack)
    worst_order = np.inf
    for s in range(500):
        rho = random_mixed(2, 1 + s % 4, seq(66, s))
        c = wootters_concurrence(rho).value
        worst_order = min(worst_order, c - max(negativity(rho, {0}).value,
                                               realignment_measure(rho, {0}).value))
    ok = worst_mono >= -1e-9 and worst_order >= -1e-9
    assert verdict("C6 N^2 / R^2 monogamy and C >= max(N, R)", ok,
                   f"min monogamy slack {worst_mono:.3e}, min C - max(N, R) {worst_order:.3e}",
                   time.perf_counter() - t0, 60.0)


@pytest.mark.slow
def test_c7_two_qubit_oracle():
    t0 = time.perf_counter()
    above, below = 0.0, 0.0
    for rank in (1, 2, 3, 4):
        for s in range(100):
            rho = random_mixed(2, rank, seq(7, rank, s))
            diff = optimize_roof(rho, {0}).upper - wootters_concurrence(rho).value ** 2
            above, below = max(above, diff), min(below, diff)
    ok = above < 1e-4 and below >= -1e-9
    assert verdict("C7 roof search vs two-qubit closed form", ok,
                   f"400 states, max excess {above:.1e}, min {below:.1e}",
                   time.perf_counter() - t0, 180.0)


def test_c8_repro_determinism(capsys):
    t0 = time.perf_counter()
    outputs = []
    for _ in range(2):
        code = cli.main(["paper-repro", "--json", "--seed", "11"])
        outputs.append(capsys.readouterr().out)
    ok = code == 0 and outputs[0] == outputs[1] and json.loads(outputs[0])["all_pass"]
    assert verdict("C8 reproduction report byte-identical across runs", ok,
                   f"{len(outputs[0])} bytes, identical={outputs[0] == outputs[1]}",
                   time.perf_counter() - t0, 60.0)


@pytest.mark.slow
def test_conjecture_property():
    t0 = time.perf_counter()
    reports = conjecture_search(4, [(1, 2)], 100, seed=2026)
    bad, unsure = violations(reports), inconclusive(reports)
    for rep in unsure:
        record_acceptance(f"    inconclusive: sample {rep.context['sample']} partition"
                          f" {rep.context['partition']} slack in [{rep.slack:.3e}, {rep.slack_max:.3e}]")
    assert verdict("Conjecture search, 100 random 4-qubit states, shape 1|2", not bad,
                   f"violated {len(bad)}, inconclusive {len(unsure)}, min slack {reports[0].slack:.3e}",
                   time.perf_counter() - t0, 600.0)
