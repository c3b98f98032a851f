"""Entanglement measures, convex-roof tangles and monogamy checks for small qubit systems."""

__version__ = "0.1.0"

from .qstate import (
    DensityMatrix,
    Partition,
    PureState,
    QubitCut,
    eigh,
    partial_trace,
    partial_transpose,
    realign,
    trace_norm,
)
from .states import (
    Ensemble,
    MixedFamilySpec,
    PartitionedWSpec,
    WClassSpec,
    ghz,
    mixed_family,
    random_mixed,
    random_pure,
    reduced_block_analytic,
    trial_ensemble,
    w_class,
    w_partitioned,
)
from .measures import (
    MeasureValue,
    mixed_family_tangle,
    negativity,
    pure_concurrence,
    pure_tangle,
    realignment_measure,
    wootters_concurrence,
)
from .convexroof import (
    RoofBracket,
    RoofConfig,
    certified_tangle,
    ckw_lower_bound,
    decomposition_from_mixer,
    ensemble_average_tangle,
    optimize_roof,
)
from .monogamy import (
    MonogamyReport,
    Verdict,
    check_ckw,
    check_ckw_mixed,
    check_generalized,
    check_measure_monogamy,
    conjecture_search,
    residual_tangle,
)

__all__ = [
    "DensityMatrix", "Partition", "PureState", "QubitCut", "eigh", "partial_trace",
    "partial_transpose", "realign", "trace_norm",
    "Ensemble", "MixedFamilySpec", "PartitionedWSpec", "WClassSpec", "ghz", "mixed_family",
    "random_mixed", "random_pure", "reduced_block_analytic", "trial_ensemble", "w_class",
    "w_partitioned",
    "MeasureValue", "mixed_family_tangle", "negativity", "pure_concurrence", "pure_tangle",
    "realignment_measure", "wootters_concurrence",
    "RoofBracket", "RoofConfig", "certified_tangle", "ckw_lower_bound",
    "decomposition_from_mixer", "ensemble_average_tangle", "optimize_roof",
    "MonogamyReport", "Verdict", "check_ckw", "check_ckw_mixed", "check_generalized",
    "check_measure_monogamy", "conjecture_search", "residual_tangle",
]
