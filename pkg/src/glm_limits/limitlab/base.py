import csv
import io
import math
import numpy as np
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field


__all__ = ['SimConfig', 'SimRow', 'SimReport', 'replication_rng', 'replicate', 'summarize']

CSV_COLUMNS = ['sample_size', 'mean', 'median', 'deviation_prob', 'bound']


@dataclass
class SimConfig:
    seed: int = 0
    replications: int = 100
    sample_sizes: Sequence[int] = (100, 1000, 10000)
    epsilon: float = 0.1

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f'Seed must be a 64-bit unsigned integer, got {self.seed}')
        if self.replications < 1:
            raise ValueError(f'Need at least one replication, got {self.replications}')
        sizes = [int(n) for n in self.sample_sizes]
        if not sizes or any(n < 1 for n in sizes):
            raise ValueError(f'Sample sizes must be positive, got {sizes}')
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError(f'Sample sizes must be strictly increasing, got {sizes}')
        if not self.epsilon > 0:
            raise ValueError(f'Epsilon must be positive, got {self.epsilon}')
        self.sample_sizes = tuple(sizes)


@dataclass
class SimRow:
    sample_size: int
    mean: float
    median: float
    deviation_prob: float
    bound: float = math.nan
    extras: dict[str, float] = field(default_factory=dict)


@dataclass
class SimReport:
    name: str
    target: float
    epsilon: float
    rows: list[SimRow] = field(default_factory=list)

    def row(self, sample_size: int) -> SimRow:
        for r in self.rows:
            if r.sample_size == sample_size:
                return r
        raise KeyError(f'No row for sample size {sample_size}')

    def column(self, name: str) -> np.ndarray:
        if name in CSV_COLUMNS:
            return np.array([getattr(r, name) for r in self.rows], dtype=float)
        return np.array([r.extras.get(name, math.nan) for r in self.rows], dtype=float)

    @property
    def extra_columns(self) -> list[str]:
        return sorted({k for r in self.rows for k in r.extras})

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        extras = self.extra_columns
        writer.writerow(CSV_COLUMNS + extras)
        for r in self.rows:
            writer.writerow(
                [r.sample_size] + [repr(float(getattr(r, c))) for c in CSV_COLUMNS[1:]]
                + [repr(float(r.extras[k])) if k in r.extras else '' for k in extras])
        return buf.getvalue()

    def to_dict(self) -> dict:
        def clean(v: float) -> float | None:
            return float(v) if math.isfinite(v) else None

        return {
            'name': self.name,
            'target': clean(self.target),
            'epsilon': clean(self.epsilon),
            'rows': [{
                'sample_size': r.sample_size,
                'mean': clean(r.mean),
                'median': clean(r.median),
                'deviation_prob': clean(r.deviation_prob),
                'bound': clean(r.bound),
                **{k: clean(v) for k, v in sorted(r.extras.items())},
            } for r in self.rows],
        }


def replication_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent stream for one cell of a simulation, e.g. (sample_size, replication).

    Streams depend only on (seed, key), so growing a grid or the replication
    count never changes the draws of existing cells.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def replicate(cfg: SimConfig, n: int, draw: Callable[[np.random.Generator], float]
              ) -> np.ndarray:
    """Runs draw() once per replication, ordered by replication index."""
    return np.array([draw(replication_rng(cfg.seed, n, rep))
                     for rep in range(cfg.replications)], dtype=float)


def summarize(n: int, values: np.ndarray, target: float, epsilon: float,
              bound: float = math.nan, **extras: float) -> SimRow:
    values = np.asarray(values, dtype=float)
    return SimRow(
        sample_size=n,
        mean=float(np.mean(values)),
        median=float(np.median(values)),
        deviation_prob=float(np.mean(np.abs(values - target) > epsilon)),
        bound=float(bound),
        extras={k: float(v) for k, v in extras.items()},
    )
