"""Truncated-mean laws for summands without finite expectation."""
import logging
import math
import numpy as np
from collections.abc import Callable
from .base import SimConfig, SimReport, replicate, summarize


__all__ = [
    'TRUNCATED_MEANS', 'truncated_mean_stat', 'st_petersburg_reward', 'st_petersburg_draw',
    'st_petersburg_sim', 'pareto_sim', 'exp_spacings_moments', 'exp_spacings_stat',
    'spacings_sim',
]
logger = logging.getLogger(__name__)

ST_PETERSBURG_CAP = 63


def _st_petersburg_truncated_mean(v: float) -> float:
    # P(X = 2^k) = 2^-k, so every admitted level contributes exactly 1
    return float(math.floor(math.log2(v))) if v >= 2 else 0.0


def _pareto_truncated_mean(v: float) -> float:
    # density x^-2 on (1, inf)
    return math.log(v) if v > 1 else 0.0


TRUNCATED_MEANS: dict[str, Callable[[float], float]] = {
    'stpetersburg': _st_petersburg_truncated_mean,
    'pareto': _pareto_truncated_mean,
}


def truncated_mean_stat(samples, v_n: float, distribution: str | None = None
                        ) -> tuple[float, float, float]:
    """Returns (S_n, B_n, (S_n - B_n) / v_n).

    B_n is n E[X 1(|X| <= v_n)] when ``distribution`` names one of
    TRUNCATED_MEANS, else the plug-in sum of the samples with |X| <= v_n.
    """
    samples = np.asarray(samples, dtype=float)
    if len(samples) == 0:
        raise ValueError('truncated_mean_stat needs at least one sample')
    if not v_n > 0:
        raise ValueError(f'Truncation level must be positive, got {v_n}')
    s_n = float(np.sum(samples))
    if distribution is None:
        b_n = float(np.sum(samples[np.abs(samples) <= v_n]))
    else:
        try:
            b_n = len(samples) * TRUNCATED_MEANS[distribution](v_n)
        except KeyError:
            raise ValueError(f'No truncated mean known for "{distribution}", '
                             f'expected one of {", ".join(TRUNCATED_MEANS)}')
    return s_n, b_n, (s_n - b_n) / v_n


def st_petersburg_reward(level):
    """Payoff 2^k for a first head on toss k."""
    return np.exp2(np.minimum(np.asarray(level, dtype=float), ST_PETERSBURG_CAP))


def st_petersburg_draw(rng: np.random.Generator, n: int) -> tuple[np.ndarray, int]:
    """Draws n payoffs; returns them with the number of levels clipped at the cap."""
    levels = rng.geometric(0.5, size=n)
    cap_hits = int(np.count_nonzero(levels > ST_PETERSBURG_CAP))
    return st_petersburg_reward(levels), cap_hits


def _check_min_size(cfg: SimConfig, least: int, what: str):
    if cfg.sample_sizes[0] < least:
        raise ValueError(f'{what} needs sample sizes of at least {least}, '
                         f'got {cfg.sample_sizes[0]}')


def st_petersburg_sim(cfg: SimConfig) -> SimReport:
    """S_n / (n log2 n) for the St. Petersburg game; the fair stake makes it tend to 1."""
    _check_min_size(cfg, 2, 'St. Petersburg simulation')
    report = SimReport('stpetersburg', 1.0, cfg.epsilon)
    for n in cfg.sample_sizes:
        hits = []

        def draw(rng):
            rewards, capped = st_petersburg_draw(rng, n)
            hits.append(capped)
            return float(np.sum(rewards)) / (n * math.log2(n))

        values = replicate(cfg, n, draw)
        if sum(hits):
            logger.info('n=%d: %d levels clipped at 2^%d', n, sum(hits), ST_PETERSBURG_CAP)
        report.rows.append(summarize(n, values, 1.0, cfg.epsilon, cap_hits=sum(hits)))
    return report


def pareto_sim(cfg: SimConfig) -> SimReport:
    """S_n / (n ln n) for shape-1 Pareto summands, P(X > x) = 1/x.

    The ``centered_median`` column applies the second-order centering
    n ln ln n, which removes most of the slow drift of the plain ratio.
    """
    _check_min_size(cfg, 3, 'Pareto simulation')
    report = SimReport('pareto', 1.0, cfg.epsilon)
    for n in cfg.sample_sizes:
        norm = n * math.log(n)
        sums = replicate(cfg, n, lambda rng: float(np.sum(1.0 / (1.0 - rng.random(n)))))
        centered = (sums - norm - n * math.log(math.log(n))) / norm
        report.rows.append(summarize(n, sums / norm, 1.0, cfg.epsilon,
                                     centered_median=float(np.median(centered))))
    return report


def exp_spacings_moments(a) -> tuple[float, float]:
    """Exact mean and variance of sum a_i X_(i) for n iid standard exponentials.

    Uses X_(k) = sum_{j<=k} E_j / (n - j + 1) with iid exponential spacings E_j.
    """
    a = np.asarray(a, dtype=float)
    n = len(a)
    if n == 0:
        raise ValueError('Need at least one weight')
    tail = np.cumsum(a[::-1])[::-1] / (n - np.arange(n))
    return float(np.sum(tail)), float(np.sum(tail ** 2))


def exp_spacings_stat(a, samples) -> tuple[float, float]:
    """Returns (T_n, E T_n) for T_n = sum a_i X_(i)."""
    a = np.asarray(a, dtype=float)
    samples = np.asarray(samples, dtype=float)
    if len(a) != len(samples):
        raise ValueError(f'Got {len(a)} weights and {len(samples)} samples')
    mean, _ = exp_spacings_moments(a)
    return float(np.dot(a, np.sort(samples))), mean


def _unit_weights(n: int) -> np.ndarray:
    return np.ones(n)


def spacings_sim(cfg: SimConfig,
                 weights: Callable[[int], np.ndarray] = _unit_weights) -> SimReport:
    """(T_n - E T_n) / sqrt(n ln n) against the Chebyshev bound Var T_n / (v_n^2 eps^2)."""
    _check_min_size(cfg, 2, 'Spacings simulation')
    report = SimReport('spacings', 0.0, cfg.epsilon)
    for n in cfg.sample_sizes:
        a = np.asarray(weights(n), dtype=float)
        if len(a) != n:
            raise ValueError(f'Weights for n={n} have length {len(a)}')
        mean, var = exp_spacings_moments(a)
        v_n = math.sqrt(n * math.log(n))
        values = replicate(
            cfg, n, lambda rng: (float(np.dot(a, np.sort(rng.standard_exponential(n)))) - mean)
            / v_n)
        report.rows.append(summarize(n, values, 0.0, cfg.epsilon,
                                     var / (v_n * cfg.epsilon) ** 2, expected_t=mean))
    return report
