"""Weak laws of large numbers: iid, weighted, dependent, and majority voting."""
import math
import numpy as np
from scipy import stats
from scipy.signal import lfilter
from .base import SimConfig, SimReport, replicate, replication_rng, summarize


__all__ = [
    'weighted_mean', 'iid_mean_sim', 'weighted_mean_sim', 'dependent_mean_sim',
    'boosting_bound', 'majority_vote_sim', 'boosting_sim',
]


def weighted_mean(samples, variances) -> float:
    """Precision-weighted average, weights 1/sigma_i^2."""
    samples = np.asarray(samples, dtype=float)
    variances = np.asarray(variances, dtype=float)
    if len(samples) == 0:
        raise ValueError('weighted_mean needs at least one sample')
    if samples.shape != variances.shape:
        raise ValueError(f'Got {len(samples)} samples and {len(variances)} variances')
    if np.any(variances <= 0):
        raise ValueError('Variances must be positive')
    w = 1.0 / variances
    return float(np.sum(w * samples) / np.sum(w))


def iid_mean_sim(cfg: SimConfig, dist=None) -> SimReport:
    """Sample mean of iid draws against the Chebyshev bound sigma^2 / (n eps^2)."""
    dist = dist or stats.expon()
    mu, var = float(dist.mean()), float(dist.var())
    report = SimReport('khinchin', mu, cfg.epsilon)
    for n in cfg.sample_sizes:
        values = replicate(cfg, n, lambda rng: float(np.mean(dist.rvs(size=n, random_state=rng))))
        report.rows.append(summarize(n, values, mu, cfg.epsilon, var / (n * cfg.epsilon ** 2)))
    return report


def _cycling_variances(n: int) -> np.ndarray:
    return 1.0 + np.arange(n) % 5


def weighted_mean_sim(cfg: SimConfig, mean: float = 1.0) -> SimReport:
    """Independent, non-identical Gaussians with variances cycling through 1..5.

    The Chebyshev bound for the weighted mean is 1 / (eps^2 sum w_i).
    """
    report = SimReport('weighted', mean, cfg.epsilon)
    for n in cfg.sample_sizes:
        variances = _cycling_variances(n)

        def draw(rng):
            return weighted_mean(mean + np.sqrt(variances) * rng.standard_normal(n), variances)

        values = replicate(cfg, n, draw)
        bound = 1.0 / (cfg.epsilon ** 2 * np.sum(1.0 / variances))
        report.rows.append(summarize(n, values, mean, cfg.epsilon, bound))
    return report


def _ar1(rng: np.random.Generator, n: int, rho: float) -> np.ndarray:
    # stationary unit-variance AR(1): corr(x_t, x_{t+k}) = rho^k
    innovations = rng.standard_normal(n)
    innovations[1:] *= math.sqrt(1.0 - rho * rho)
    return lfilter([1.0], [1.0, -rho], innovations)


def dependent_mean_sim(rho_decay: float, cfg: SimConfig) -> SimReport:
    if not 0 < rho_decay < 1:
        raise ValueError(f'rho_decay must be in (0, 1), got {rho_decay}')
    report = SimReport('dependent', 0.0, cfg.epsilon)
    for n in cfg.sample_sizes:
        values = replicate(cfg, n, lambda rng: float(np.mean(_ar1(rng, n, rho_decay))))
        rho_sum = (1.0 - rho_decay ** n) / (1.0 - rho_decay)
        bound = 2.0 / (n * cfg.epsilon ** 2) * rho_sum
        report.rows.append(summarize(
            n, values, 0.0, cfg.epsilon, bound, iid_bound=1.0 / (n * cfg.epsilon ** 2)))
    return report


def _check_delta(delta: float):
    if not 0 < delta < 0.5:
        raise ValueError(f'delta must be in (0, 0.5), got {delta}')


def boosting_bound(delta: float, eps: float) -> int:
    """Least n with n >= ln(1/eps) / (2 delta^2)."""
    _check_delta(delta)
    if not 0 < eps < 1:
        raise ValueError(f'eps must be in (0, 1), got {eps}')
    return math.ceil(math.log(1.0 / eps) / (2.0 * delta * delta))


def _majority_correct(rng: np.random.Generator, n: int, delta: float) -> float:
    votes = rng.binomial(n, 0.5 + delta)
    # an exact split counts as a failure
    return 1.0 if 2 * votes > n else 0.0


def majority_vote_sim(delta: float, n: int, cfg: SimConfig) -> float:
    """Fraction of replications whose majority of n votes is correct."""
    _check_delta(delta)
    if n < 1:
        raise ValueError(f'Need at least one vote, got {n}')
    return float(np.mean([_majority_correct(replication_rng(cfg.seed, n, rep), n, delta)
                          for rep in range(cfg.replications)]))


def boosting_sim(delta: float, cfg: SimConfig) -> SimReport:
    """Majority-vote success per n, failure rate against exp(-2 n delta^2).

    Here ``cfg.epsilon`` is the target failure probability of the bound.
    """
    _check_delta(delta)
    required = boosting_bound(delta, cfg.epsilon)
    report = SimReport('boosting', 1.0, cfg.epsilon)
    for n in cfg.sample_sizes:
        values = replicate(cfg, n, lambda rng: _majority_correct(rng, n, delta))
        row = summarize(n, values, 1.0, 0.5, math.exp(-2.0 * n * delta * delta),
                        required_n=required)
        report.rows.append(row)
    return report
