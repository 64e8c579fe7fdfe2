"""Executable checks for every inequality and identity, plus the fixed counterexamples."""

from .contractions import (
    contraction_main_bound,
    hua_det_inequality,
    hua_identity_residual,
    hua_reversal_det,
    hua_strengthened_det,
    marcus_bounds,
    reversal_bound,
    reversal_det,
    sum_identity_residual,
    weyl_tail_relation,
)
from .counterexamples import CounterexampleReport, reproduce_counterexamples
from .psd import (
    fan_min_det,
    fiedler_chain,
    hartfiel_det,
    head_tail_power,
    lidskii_product,
    main_bounds,
    minkowski_det,
    nested_frame_det_bound,
    oppenheim_tail_power,
    pairwise_bound,
    partial_isometry_reduction,
    product_spectrum,
    psd_spectrum,
    scalar_product_bound,
    tail_chain,
)
from .reports import DEFAULT_TOL, IDENTITY_TOL, BoundReport, IdentityReport, chain, combine

__all__ = [
    "BoundReport",
    "CounterexampleReport",
    "DEFAULT_TOL",
    "IDENTITY_TOL",
    "IdentityReport",
    "chain",
    "combine",
    "contraction_main_bound",
    "fan_min_det",
    "fiedler_chain",
    "hartfiel_det",
    "head_tail_power",
    "hua_det_inequality",
    "hua_identity_residual",
    "hua_reversal_det",
    "hua_strengthened_det",
    "lidskii_product",
    "main_bounds",
    "marcus_bounds",
    "minkowski_det",
    "nested_frame_det_bound",
    "oppenheim_tail_power",
    "pairwise_bound",
    "partial_isometry_reduction",
    "product_spectrum",
    "psd_spectrum",
    "reproduce_counterexamples",
    "reversal_bound",
    "reversal_det",
    "scalar_product_bound",
    "sum_identity_residual",
    "tail_chain",
    "weyl_tail_relation",
]
