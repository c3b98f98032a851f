"""Random search for states that break the block monogamy inequality.

Each sample is a random 4-qubit pure state, checked with the focus against a
single qubit and a two-qubit block. Blocks larger than one qubit need the
convex roof, so their terms are certified brackets; a check is only called
violated when every bracket is certified.
"""
from tanglekit import RoofConfig, conjecture_search
from tanglekit.monogamy import inconclusive, violations

reports = conjecture_search(4, [(1, 2)], samples=30, cfg=RoofConfig(restarts=16), seed=1)
print(f"violations: {len(violations(reports))}, inconclusive: {len(inconclusive(reports))}")
print("five tightest samples:")
for rep in reports[:5]:
    print(f"  sample {rep.context['sample']:2d}: slack {rep.slack:.4f}  {rep.verdict.value}")
