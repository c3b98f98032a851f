"""Convex roof of the W / vacuum mixture, certified from both sides.

The upper bound is an explicit decomposition found by searching over isometries.
The lower bound is the sum of squared two-qubit concurrences, which no
decomposition can beat. When the two meet, the value is proven.
"""
import numpy as np

from tanglekit import (
    MixedFamilySpec,
    WClassSpec,
    certified_tangle,
    ensemble_average_tangle,
    mixed_family,
    mixed_family_tangle,
    trial_ensemble,
)
from tanglekit.convexroof import effective_members

amp = 1 / np.sqrt(3)
spec = MixedFamilySpec(WClassSpec(amp, [amp, amp]), 3 / 5)
rho = mixed_family(spec)

trial = trial_ensemble(spec)
print(f"three-member phase ensemble average: {ensemble_average_tangle(trial, {0}):.12f}")
print(f"closed form 4 p^2 |a|^2 sum|b|^2:      {mixed_family_tangle(spec).value:.12f}")

bracket = certified_tangle(rho, 0)
print(f"certified bracket: [{bracket.lower:.12f}, {bracket.upper:.12f}]  certified={bracket.certified}")
print(f"witness uses {effective_members(bracket.witness)} members:")
for weight, member in bracket.witness.members:
    print(f"  weight {weight:.4f}")

print("\np sweep (lower = pairwise sum, upper = searched ensemble):")
for p in np.linspace(0, 1, 6):
    b = certified_tangle(mixed_family(MixedFamilySpec(spec.w, float(p))), 0)
    print(f"  p={p:.1f}  [{b.lower:.8f}, {b.upper:.8f}]")
