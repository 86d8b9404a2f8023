import math
import numpy as np
import pytest
from scipy import stats
from glm_limits.limitlab import (
    SimConfig, weighted_mean, iid_mean_sim, weighted_mean_sim, dependent_mean_sim,
    boosting_bound, majority_vote_sim, boosting_sim,
)


def slack(bound: float, reps: int) -> float:
    b = min(bound, 1.0)
    return 3.0 * math.sqrt(b * (1.0 - b) / reps)


def test_weighted_mean_examples():
    assert weighted_mean([1, 3], [1, 1]) == 2.0
    assert weighted_mean([0, 10], [1, 9]) == pytest.approx(1.0)
    assert weighted_mean([7.5], [3.0]) == 7.5


def test_weighted_mean_equal_variances_is_the_mean():
    x = np.random.default_rng(1).normal(size=101)
    assert weighted_mean(x, np.full(101, 4.0)) == np.mean(x)


@pytest.mark.parametrize('samples, variances', [
    ([], []),
    ([1.0, 2.0], [1.0, 0.0]),
    ([1.0, 2.0], [1.0, -1.0]),
    ([1.0, 2.0], [1.0]),
])
def test_weighted_mean_errors(samples, variances):
    with pytest.raises(ValueError):
        weighted_mean(samples, variances)


def test_dependent_mean_concentrates():
    cfg = SimConfig(seed=3, replications=200, sample_sizes=(100, 1000, 10000), epsilon=0.1)
    report = dependent_mean_sim(0.5, cfg)
    probs = report.column('deviation_prob')
    assert all(b <= a for a, b in zip(probs, probs[1:]))
    assert probs[-1] == 0.0
    assert np.all(probs <= report.column('bound'))
    assert report.column('bound') == pytest.approx(
        [2 / (n * 0.01) * (1 - 0.5 ** n) / 0.5 for n in (100, 1000, 10000)])


def test_nearly_independent_sequence_obeys_iid_bound():
    cfg = SimConfig(seed=4, replications=300, sample_sizes=(100, 1000), epsilon=0.1)
    report = dependent_mean_sim(1e-6, cfg)
    iid = report.column('iid_bound')
    probs = report.column('deviation_prob')
    for p, b in zip(probs, iid):
        assert p <= b + slack(b, cfg.replications)


def test_dependent_mean_rejects_bad_rho():
    with pytest.raises(ValueError):
        dependent_mean_sim(1.0, SimConfig())


def test_dependent_mean_is_deterministic():
    cfg = SimConfig(seed=9, replications=1, sample_sizes=(50, 500))
    assert dependent_mean_sim(0.7, cfg).to_csv() == dependent_mean_sim(0.7, cfg).to_csv()


def test_iid_mean_follows_chebyshev():
    cfg = SimConfig(seed=5, replications=300, sample_sizes=(50, 500, 5000), epsilon=0.1)
    report = iid_mean_sim(cfg, stats.expon())
    assert report.target == 1.0
    for row in report.rows:
        assert row.deviation_prob <= row.bound + slack(row.bound, cfg.replications)
    assert report.row(5000).mean == pytest.approx(1.0, abs=0.01)


def test_weighted_mean_sim_follows_chebyshev():
    cfg = SimConfig(seed=6, replications=300, sample_sizes=(100, 1000), epsilon=0.1)
    report = weighted_mean_sim(cfg)
    for row in report.rows:
        assert row.deviation_prob <= row.bound + slack(row.bound, cfg.replications)
    w = 1.0 / (1.0 + np.arange(1000) % 5)
    assert report.row(1000).bound == pytest.approx(1.0 / (0.01 * w.sum()))


def test_boosting_bound():
    assert boosting_bound(0.1, 0.05) == 150
    assert boosting_bound(0.25, 0.5) == math.ceil(math.log(2) / 0.125)
    for delta, eps in ((0.1, 1.0), (0.1, 0.0), (0.5, 0.05), (0.0, 0.05)):
        with pytest.raises(ValueError):
            boosting_bound(delta, eps)


def test_single_vote_success_rate():
    cfg = SimConfig(seed=11, replications=10000)
    assert majority_vote_sim(0.4, 1, cfg) == pytest.approx(0.9, abs=0.02)


def test_hoeffding_guarantee_holds():
    n = boosting_bound(0.1, 0.05)
    success = majority_vote_sim(0.1, n, SimConfig(seed=12, replications=10000))
    assert success >= 0.95


def test_ties_count_as_failures():
    # two votes with delta close to 0: a 1-1 split is common and never a success
    cfg = SimConfig(seed=13, replications=4000)
    success = majority_vote_sim(1e-9, 2, cfg)
    assert success == pytest.approx(0.25, abs=0.03)


def test_boosting_sim_failure_rate_decays():
    cfg = SimConfig(seed=14, replications=2000, sample_sizes=(10, 50, 150), epsilon=0.05)
    report = boosting_sim(0.1, cfg)
    failures = report.column('deviation_prob')
    assert failures[0] > failures[1] > failures[2]
    for row in report.rows:
        assert row.deviation_prob <= row.bound + slack(row.bound, cfg.replications)
        assert row.extras['required_n'] == 150
    assert report.row(150).mean >= 0.95
