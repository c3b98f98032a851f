"""Entanglement measures on a few familiar states.

Run with ``python demos/01_measures.py``.
"""
import numpy as np

from tanglekit import (
    PureState,
    WClassSpec,
    ghz,
    negativity,
    pure_tangle,
    realignment_measure,
    w_class,
    wootters_concurrence,
)
from tanglekit.qstate import partial_trace
from tanglekit.states import random_mixed

bell = PureState(np.array([1, 0, 0, 1]) / np.sqrt(2))
amp = 1 / np.sqrt(5)
w5 = w_class(WClassSpec(amp, [amp] * 4))

print("Pure states: every measure agrees with the concurrence.")
for name, psi in [("Bell", bell), ("GHZ3", ghz(3)), ("W5", w5)]:
    tau = pure_tangle(psi, {0}).value
    print(f"  {name:5s} tangle {tau:.6f}  concurrence {np.sqrt(tau):.6f}"
          f"  negativity {negativity(psi, {0}).value:.6f}"
          f"  realignment {realignment_measure(psi, {0}).value:.6f}")

print("\nThe 5-qubit W focus marginal is diag(4/5, 1/5), so 4 det = 16/25:")
print(np.round(partial_trace(w5, [0]).matrix.real, 12))

print("\nTwo-qubit mixed states: the closed-form concurrence dominates N and R.")
for seed in range(5):
    rho = random_mixed(2, 1 + seed % 4, seed)
    print(f"  seed {seed}: C {wootters_concurrence(rho).value:.4f}"
          f"  N {negativity(rho, {0}).value:.4f}  R {realignment_measure(rho, {0}).value:.4f}")
