from .base import SimConfig, SimRow, SimReport, replication_rng, replicate, summarize
from .lln import (
    weighted_mean, iid_mean_sim, weighted_mean_sim, dependent_mean_sim,
    boosting_bound, majority_vote_sim, boosting_sim,
)
from .heavy import (
    truncated_mean_stat, st_petersburg_reward, st_petersburg_draw, st_petersburg_sim,
    pareto_sim, exp_spacings_moments, exp_spacings_stat, spacings_sim,
)
from .edf import (
    EmpiricalCDF, edf, gc_sup_distance, REFERENCE_DISTRIBUTIONS, get_reference,
    dkw_bound, gc_sim, dkw_check,
)
from .kde import (
    KernelKind, KERNELS, ROUGHNESS, get_kernel, kde, normal_reference_bandwidth, kde_clt_check,
)
from .wald import synthetic_design, wald_coverage_sim


__all__ = [
    'SimConfig', 'SimRow', 'SimReport', 'replication_rng', 'replicate', 'summarize',
    'weighted_mean', 'iid_mean_sim', 'weighted_mean_sim', 'dependent_mean_sim',
    'boosting_bound', 'majority_vote_sim', 'boosting_sim',
    'truncated_mean_stat', 'st_petersburg_reward', 'st_petersburg_draw',
    'st_petersburg_sim', 'pareto_sim', 'exp_spacings_moments', 'exp_spacings_stat',
    'spacings_sim', 'EmpiricalCDF', 'edf', 'gc_sup_distance', 'REFERENCE_DISTRIBUTIONS',
    'get_reference', 'dkw_bound', 'gc_sim', 'dkw_check',
    'KernelKind', 'KERNELS', 'ROUGHNESS', 'get_kernel', 'kde', 'normal_reference_bandwidth',
    'kde_clt_check',
    'synthetic_design', 'wald_coverage_sim',
]
