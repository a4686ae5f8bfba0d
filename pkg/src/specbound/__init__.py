"""Certified spectral-radius bounds for power-series matrix functions."""

from .bounds import (
    BestBoundReport,
    BoundResult,
    best_bound,
    bound_pair_holder,
    bound_pair_mixed,
    bound_pair_norm,
    bound_pair_sq,
    bound_pair_triple,
    bound_pm_mixed,
    bound_pm_quadratic,
    bound_product_chain,
    bound_product_half,
    bound_single,
    reverse_holder_gap,
)
from .errors import (
    BadExponent,
    DimMismatch,
    EigenFailure,
    GenerationFailure,
    NoConvergence,
    NonCommuting,
    NormOverflow,
    OutOfDisk,
    SpecboundError,
    UnknownFamily,
)
from .harness import (
    FAMILIES_PAIR,
    FAMILIES_SINGLE,
    InstanceSpec,
    SweepConfig,
    TrialRecord,
    gen_commuting_pair,
    gen_matrix,
    resolve_series,
    run_sweep,
    summarize,
    write_summary_json,
    write_trials_csv,
)
from .matrices import (
    EvalCertificate,
    as_matrix,
    commutator_norm,
    eval_matrix_series,
    gelfand_sequence,
    is_commuting,
    load_matrix,
    operator_norm,
    save_matrix,
    series_partial_sum,
    spectral_radius,
    true_function_radius,
)
from .series import (
    PowerSeries,
    SeriesCatalogEntry,
    abs_companion,
    catalog,
    eval_companion,
    from_coefficients,
    hypergeometric_series,
    lookup,
    truncation_order,
)

__version__ = "0.1.0"
