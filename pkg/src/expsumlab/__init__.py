"""Desk-scale laboratory for exponential sums and arithmetic energies over F_p."""

from .bounds import (
    ALL_SUM_BOUNDS,
    AuditRecord,
    BoundSpec,
    CountingBounds,
    RatioSummary,
    aggregate,
    audit,
    audit_raw,
    counting_bounds,
    dominates_prior_on_grid,
    pair_weight_trilinear_bound,
    prior_trilinear_bound,
    quadrilinear_bound,
    trilinear_bound,
    triple_weight_quadrilinear_bound,
    trivial_trilinear_bound,
)
from .energies import (
    EnergyReport,
    Spectrum,
    additive_char_second_moment,
    collinear_triples,
    diff_mult_energy,
    diff_product_energy,
    diff_product_energy_char,
    diff_product_spectrum,
    max_char_diff_sum,
    mult_energy,
    product_diff_energy,
    product_diff_energy_window,
    product_diff_spectrum,
)
from .expansion import (
    DichotomyReport,
    ImageReport,
    complement_hit_count,
    count_solutions_with_shift,
    covers_field,
    cubed_sumset_shift_image,
    product_sumset_dichotomy,
    shift_rep_counts,
    shift_rep_second_moment,
    subgroup_sumset_size,
    triple_product_shift_image,
)
from .experiments import ExperimentConfig, ReportRow, RunResult, make_config, run
from .expsums import (
    SumResult,
    bilinear_sum,
    multilinear_T,
    poly_arg_sum,
    quadrilinear_sum,
    reduction_check,
    rel_close,
    trilinear_sum,
    trilinear_sum_fast,
)
from .ffield import FieldCtx, add_char, make_field, mult_char, subgroup_elems, unit_root
from .rng import SplitMix64, derive_seed
from .sets import (
    FpSet,
    WeightTensor,
    WeightVec,
    diffset,
    fpset,
    fpset_strip_zero,
    full_units,
    gen_geometric,
    gen_interval,
    gen_random,
    make_tensor,
    make_weights,
    parse_set_spec,
    powerset_k,
    productset,
    sumset,
)

__all__ = [
    "ALL_SUM_BOUNDS",
    "AuditRecord",
    "BoundSpec",
    "CountingBounds",
    "DichotomyReport",
    "EnergyReport",
    "ExperimentConfig",
    "FieldCtx",
    "FpSet",
    "ImageReport",
    "RatioSummary",
    "ReportRow",
    "RunResult",
    "Spectrum",
    "SplitMix64",
    "SumResult",
    "WeightTensor",
    "WeightVec",
    "add_char",
    "additive_char_second_moment",
    "aggregate",
    "audit",
    "audit_raw",
    "bilinear_sum",
    "collinear_triples",
    "complement_hit_count",
    "count_solutions_with_shift",
    "counting_bounds",
    "covers_field",
    "cubed_sumset_shift_image",
    "derive_seed",
    "diff_mult_energy",
    "diff_product_energy",
    "diff_product_energy_char",
    "diff_product_spectrum",
    "diffset",
    "dominates_prior_on_grid",
    "fpset",
    "fpset_strip_zero",
    "full_units",
    "gen_geometric",
    "gen_interval",
    "gen_random",
    "make_config",
    "make_field",
    "make_tensor",
    "make_weights",
    "max_char_diff_sum",
    "mult_char",
    "mult_energy",
    "multilinear_T",
    "pair_weight_trilinear_bound",
    "parse_set_spec",
    "poly_arg_sum",
    "powerset_k",
    "prior_trilinear_bound",
    "product_diff_energy",
    "product_diff_energy_window",
    "product_diff_spectrum",
    "product_sumset_dichotomy",
    "productset",
    "quadrilinear_bound",
    "quadrilinear_sum",
    "reduction_check",
    "rel_close",
    "run",
    "shift_rep_counts",
    "shift_rep_second_moment",
    "subgroup_elems",
    "subgroup_sumset_size",
    "sumset",
    "trilinear_bound",
    "trilinear_sum",
    "trilinear_sum_fast",
    "triple_product_shift_image",
    "triple_weight_quadrilinear_bound",
    "trivial_trilinear_bound",
    "unit_root",
]

__version__ = "0.1.0"
