"""Monogamy across blocks of qubits for W-class states.

A focus qubit shares tangle with groups of qubits. For W-class states the
tangle with the whole rest equals the sum over blocks, so nothing is left
over for genuinely many-body entanglement.
"""
import numpy as np

from tanglekit import PartitionedWSpec, check_generalized, ghz, residual_tangle, w_partitioned
from tanglekit.qstate import Partition
from tanglekit.states import random_partitioned_w

amp = 1 / np.sqrt(5)
state, part = w_partitioned(PartitionedWSpec(amp, [("B", [amp, amp]), ("C", [amp, amp])]))
rep = check_generalized(state, part)
print(f"partition {part}: lhs {rep.lhs:.6f}")
for name, term in rep.rhs_terms:
    print(f"  block {name}: tangle in [{term.lower:.6f}, {term.upper:.6f}]")
print(f"  slack {rep.slack:.2e} -> {rep.verdict.value}")

print("\nrandom partitioned W-class states:")
for seed in range(5):
    spec = random_partitioned_w((1, 2, 3), seed)
    s, p = w_partitioned(spec)
    r = check_generalized(s, p)
    print(f"  seed {seed}: slack {r.slack:+.2e}  {r.verdict.value}")

print(f"\nGHZ residual tangle (three-tangle): {residual_tangle(ghz(3), Partition.parse('0|1|2')):.6f}")
