import math
import numpy as np
import pytest
from scipy import stats
from glm_limits.limitlab import (
    SimConfig, edf, gc_sup_distance, dkw_bound, gc_sim, dkw_check, get_reference,
)


def test_edf_steps():
    f_n = edf([3.0, 1.0, 2.0, 2.0])
    assert list(f_n.breakpoints) == [1.0, 2.0, 3.0]
    assert list(f_n.levels) == [0.25, 0.75, 1.0]
    assert f_n(0.5) == 0.0
    assert f_n(2.0) == 0.75
    assert f_n.left_limit(2.0) == 0.25
    assert f_n(10.0) == 1.0


def test_edf_rejects_bad_samples():
    with pytest.raises(ValueError):
        edf([])
    with pytest.raises(ValueError):
        edf([1.0, math.nan])


def test_single_sample_sup_distance():
    assert gc_sup_distance([0.5], stats.uniform().cdf) == pytest.approx(0.5)
    assert gc_sup_distance([0.9], stats.uniform().cdf) == pytest.approx(0.9)


def test_sup_distance_matches_dense_grid():
    rng = np.random.default_rng(2)
    samples = rng.normal(size=40)
    f_n = edf(samples)
    grid = np.concatenate([samples, np.nextafter(samples, -np.inf), np.linspace(-5, 5, 2001)])
    brute = np.max(np.abs(f_n(grid) - stats.norm.cdf(grid)))
    assert gc_sup_distance(samples, stats.norm.cdf) == pytest.approx(brute, abs=1e-12)


def test_edf_is_a_cdf():
    f_n = edf(np.random.default_rng(3).exponential(size=50))
    grid = np.linspace(-1, 10, 500)
    values = f_n(grid)
    assert np.all(np.diff(values) >= 0)
    assert values[0] == 0.0 and values[-1] == 1.0


def test_dkw_bound():
    assert dkw_bound(100, 0.1) == pytest.approx(2 * math.exp(-2))
    assert dkw_bound(1, 1e-6) == pytest.approx(2.0)


def test_glivenko_cantelli():
    cfg = SimConfig(seed=5, replications=20, sample_sizes=(100, 10000), epsilon=0.03)
    report = gc_sim(cfg, get_reference('normal'))
    assert report.row(10000).mean < 0.03
    assert report.row(10000).mean < report.row(100).mean
    assert report.row(10000).deviation_prob == 0.0


def test_dkw_holds():
    cfg = SimConfig(seed=6, replications=400, sample_sizes=(100, 500), epsilon=0.05)
    report = dkw_check(cfg)
    assert list(report.column('violation')) == [0.0, 0.0]
    assert report.row(500).bound == pytest.approx(2 * math.exp(-2.5))
    assert report.row(100).extras['mc_se'] == 0.0


def test_large_epsilon_never_exceeded():
    cfg = SimConfig(seed=7, replications=50, sample_sizes=(10,), epsilon=1.0)
    assert dkw_check(cfg).row(10).deviation_prob == 0.0


def test_gc_is_deterministic():
    cfg = SimConfig(seed=8, replications=5, sample_sizes=(10, 20))
    assert gc_sim(cfg).to_csv() == gc_sim(cfg).to_csv()


def test_unknown_reference():
    assert get_reference(' Uniform ') is get_reference('uniform')
    with pytest.raises(ValueError):
        get_reference('cauchy')


def test_dkw_on_uniform_at_full_scale():
    cfg = SimConfig(seed=9, replications=10000, sample_sizes=(100, 1000, 10000), epsilon=0.1)
    report = dkw_check(cfg, get_reference('uniform'))
    assert list(report.column('violation')) == [0.0, 0.0, 0.0]
    for row in report.rows:
        capped = min(row.bound, 1.0)
        assert row.deviation_prob <= row.bound + 3 * math.sqrt(capped * (1 - capped) / 10000)
    medians = report.column('median')
    assert medians[0] > medians[1] > medians[2]
