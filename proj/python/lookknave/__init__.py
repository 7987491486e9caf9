"""Look-Knave sequences: each run of b repeated n times becomes numeral(n) then not-b."""

from ._core import (
    DEFAULT_MAX_BITS,
    LookKnaveError,
    basin,
    decompose_runs,
    element_table,
    estimate_lambda,
    fixed_point_prefix,
    growth_lengths,
    knave_step,
    lcp,
    looksay_step_binary,
    looksay_step_decimal,
    metric_exponent,
    numeral,
    orbit,
    ribbit_bounds,
    stable_prefix,
)

__all__ = [
    "DEFAULT_MAX_BITS",
    "LookKnaveError",
    "basin",
    "decompose_runs",
    "element_table",
    "estimate_lambda",
    "fixed_point_prefix",
    "growth_lengths",
    "knave_step",
    "lcp",
    "looksay_step_binary",
    "looksay_step_decimal",
    "metric_exponent",
    "numeral",
    "orbit",
    "ribbit_bounds",
    "stable_prefix",
]
