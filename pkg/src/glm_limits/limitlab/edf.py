"""Empirical distribution functions, Glivenko-Cantelli and the DKW bound."""
import math
import numpy as np
from scipy import stats
from .base import SimConfig, SimReport, replicate, summarize


__all__ = [
    'EmpiricalCDF', 'edf', 'gc_sup_distance', 'REFERENCE_DISTRIBUTIONS',
    'get_reference', 'dkw_bound', 'gc_sim', 'dkw_check',
]

REFERENCE_DISTRIBUTIONS = {
    'uniform': stats.uniform(),
    'normal': stats.norm(),
    'exponential': stats.expon(),
}


def get_reference(name: str):
    try:
        return REFERENCE_DISTRIBUTIONS[name.strip().lower()]
    except KeyError:
        raise ValueError(f'Unknown distribution "{name}", expected one of '
                         f'{", ".join(REFERENCE_DISTRIBUTIONS)}')


class EmpiricalCDF:
    """Right-continuous step function jumping 1/n at every sample."""

    def __init__(self, samples):
        samples = np.asarray(samples, dtype=float).reshape(-1)
        if len(samples) == 0:
            raise ValueError('EDF needs at least one sample')
        if not np.all(np.isfinite(samples)):
            raise ValueError('EDF samples must be finite')
        self.points = np.sort(samples)
        self.n = len(samples)

    @property
    def breakpoints(self) -> np.ndarray:
        return np.unique(self.points)

    @property
    def levels(self) -> np.ndarray:
        """Value of the EDF at and right after each breakpoint."""
        return self(self.breakpoints)

    def __call__(self, x):
        return np.searchsorted(self.points, x, side='right') / self.n

    def left_limit(self, x):
        return np.searchsorted(self.points, x, side='left') / self.n


def edf(samples) -> EmpiricalCDF:
    return EmpiricalCDF(samples)


def gc_sup_distance(samples, cdf) -> float:
    """sup_x |F_n(x) - F(x)|, exact for continuous F.

    The supremum is attained at a jump, either at the sample point or just
    to its left.
    """
    f_n = edf(samples)
    x = f_n.breakpoints
    f = np.asarray(cdf(x), dtype=float)
    return float(max(np.max(np.abs(f_n(x) - f)), np.max(np.abs(f_n.left_limit(x) - f))))


def dkw_bound(n: int, epsilon: float) -> float:
    return 2.0 * math.exp(-2.0 * n * epsilon * epsilon)


def _sup_distances(cfg: SimConfig, n: int, dist) -> np.ndarray:
    return replicate(cfg, n, lambda rng: gc_sup_distance(
        dist.rvs(size=n, random_state=rng), dist.cdf))


def gc_sim(cfg: SimConfig, dist=None) -> SimReport:
    """Sup distance of the EDF from its reference CDF per sample size."""
    dist = dist or REFERENCE_DISTRIBUTIONS['uniform']
    report = SimReport('gc', 0.0, cfg.epsilon)
    for n in cfg.sample_sizes:
        report.rows.append(summarize(n, _sup_distances(cfg, n, dist), 0.0, cfg.epsilon,
                                     dkw_bound(n, cfg.epsilon)))
    return report


def dkw_check(cfg: SimConfig, dist=None) -> SimReport:
    """Exceedance rate P(sup distance > eps) against 2 exp(-2 n eps^2).

    A row is flagged in ``violation`` when the rate exceeds the bound by more
    than three Monte Carlo standard errors.
    """
    dist = dist or REFERENCE_DISTRIBUTIONS['uniform']
    report = SimReport('dkw', 0.0, cfg.epsilon)
    for n in cfg.sample_sizes:
        bound = dkw_bound(n, cfg.epsilon)
        capped = min(bound, 1.0)
        mc_se = math.sqrt(capped * (1.0 - capped) / cfg.replications)
        row = summarize(n, _sup_distances(cfg, n, dist), 0.0, cfg.epsilon, bound, mc_se=mc_se)
        row.extras['violation'] = float(row.deviation_prob > bound + 3.0 * mc_se)
        report.rows.append(row)
    return report
