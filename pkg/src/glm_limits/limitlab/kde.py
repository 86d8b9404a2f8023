"""Kernel density estimation and the pointwise CLT of the estimator."""
import math
import numpy as np
from collections.abc import Callable
from enum import Enum
from scipy.stats import norm
from .base import SimConfig, SimReport, replicate, summarize


__all__ = [
    'KernelKind', 'KERNELS', 'ROUGHNESS', 'get_kernel', 'kde',
    'normal_reference_bandwidth', 'kde_clt_check',
]

# evaluation chunks hold at most this many kernel values
CHUNK_CELLS = 1 << 22


class KernelKind(Enum):
    GAUSSIAN = 'gaussian'
    EPANECHNIKOV = 'epanechnikov'


def _epanechnikov(u: np.ndarray) -> np.ndarray:
    return np.where(np.abs(u) <= 1.0, 0.75 * (1.0 - u * u), 0.0)


KERNELS: dict[KernelKind, Callable[[np.ndarray], np.ndarray]] = {
    KernelKind.GAUSSIAN: norm.pdf,
    KernelKind.EPANECHNIKOV: _epanechnikov,
}

# integral of K^2
ROUGHNESS = {
    KernelKind.GAUSSIAN: 1.0 / (2.0 * math.sqrt(math.pi)),
    KernelKind.EPANECHNIKOV: 0.6,
}


def get_kernel(name: str | KernelKind) -> KernelKind:
    try:
        return KernelKind(name.strip().lower() if isinstance(name, str) else name)
    except ValueError:
        raise ValueError(f'Unknown kernel "{name}", expected one of '
                         f'{", ".join(k.value for k in KernelKind)}')


def kde(samples, bandwidth: float, kernel: KernelKind | str = KernelKind.GAUSSIAN,
        points=None) -> np.ndarray:
    """f(x) = 1 / (n b) sum K((x - X_i) / b) at every point."""
    samples = np.asarray(samples, dtype=float).reshape(-1)
    if len(samples) == 0:
        raise ValueError('KDE needs at least one sample')
    if not bandwidth > 0:
        raise ValueError(f'Bandwidth must be positive, got {bandwidth}')
    k = KERNELS[get_kernel(kernel)]
    points = samples if points is None else np.asarray(points, dtype=float).reshape(-1)
    n = len(samples)
    step = max(1, CHUNK_CELLS // n)
    out = np.empty(len(points))
    for start in range(0, len(points), step):
        chunk = points[start:start + step]
        u = (chunk[:, None] - samples[None, :]) / bandwidth
        out[start:start + step] = np.sum(k(u), axis=1)
    return out / (n * bandwidth)


def normal_reference_bandwidth(samples, scale: float = 1.06) -> float:
    """scale * sd * n^(-1/5)."""
    samples = np.asarray(samples, dtype=float)
    if len(samples) < 2:
        raise ValueError('Bandwidth rule needs at least two samples')
    if not scale > 0:
        raise ValueError(f'Bandwidth scale must be positive, got {scale}')
    return scale * float(np.std(samples, ddof=1)) * len(samples) ** -0.2


def kde_clt_check(density: Callable, sampler: Callable[[np.random.Generator, int], np.ndarray],
                  points, cfg: SimConfig, bandwidth_scale: float = 1.06,
                  kernel: KernelKind | str = KernelKind.GAUSSIAN) -> SimReport:
    """Spread of sqrt(n b_n) f_n(x) across replications.

    Rows summarize f_n at the first point. ``scaled_variance`` is compared with
    the asymptotic variance f(x) int K^2 in ``variance_target`` and with the
    finite-bandwidth value f(x) int K^2 - b_n f(x)^2 in
    ``variance_target_finite``. ``correlation`` is between the first two points.
    """
    points = np.asarray(points, dtype=float).reshape(-1)
    if len(points) == 0:
        raise ValueError('Need at least one evaluation point')
    if len(np.unique(points)) != len(points):
        raise ValueError(f'Evaluation points must be distinct, got {points.tolist()}')
    kernel = get_kernel(kernel)
    f0 = float(density(points[0]))
    target_var = f0 * ROUGHNESS[kernel]

    report = SimReport('kde-clt', f0, cfg.epsilon)
    for n in cfg.sample_sizes:
        scaled = np.empty((cfg.replications, len(points)))
        bandwidths = np.empty(cfg.replications)
        rep = iter(range(cfg.replications))

        def draw(rng):
            i = next(rep)
            samples = sampler(rng, n)
            b = normal_reference_bandwidth(samples, bandwidth_scale)
            bandwidths[i] = b
            scaled[i] = math.sqrt(n * b) * kde(samples, b, kernel, points)
            return scaled[i, 0] / math.sqrt(n * b)

        values = replicate(cfg, n, draw)
        b_bar = float(np.mean(bandwidths))
        scaled_var = float(np.var(scaled[:, 0], ddof=1)) if cfg.replications > 1 else math.nan
        correlation = math.nan
        if len(points) > 1 and cfg.replications > 2:
            correlation = float(np.corrcoef(scaled[:, 0], scaled[:, 1])[0, 1])
        report.rows.append(summarize(
            n, values, f0, cfg.epsilon,
            scaled_variance=scaled_var,
            variance_target=target_var,
            variance_target_finite=target_var - b_bar * f0 * f0,
            relative_error=abs(scaled_var - target_var) / target_var,
            correlation=correlation,
            bandwidth=b_bar,
        ))
    return report
