import math
import numpy as np
import pytest
from glm_limits.limitlab import (
    SimConfig, truncated_mean_stat, st_petersburg_reward, st_petersburg_draw,
    st_petersburg_sim, pareto_sim, exp_spacings_moments, exp_spacings_stat, spacings_sim,
    replication_rng,
)


def test_truncated_mean_plug_in():
    assert truncated_mean_stat([1, 2, 3], 10) == (6.0, 6.0, 0.0)
    s_n, b_n, normalized = truncated_mean_stat([1, 100], 10)
    assert (s_n, b_n) == (101.0, 1.0)
    assert normalized == pytest.approx(10.0)


def test_truncated_mean_analytic():
    # E[X 1(X <= 8)] = 2 * 1/2 + 4 * 1/4 + 8 * 1/8 = 3
    s_n, b_n, _ = truncated_mean_stat([2, 2, 4, 16], 8, 'stpetersburg')
    assert b_n == 12.0
    assert s_n == 24.0
    _, b_n, _ = truncated_mean_stat([2.0, 5.0], math.e ** 2, 'pareto')
    assert b_n == pytest.approx(4.0)


def test_truncated_mean_errors():
    with pytest.raises(ValueError):
        truncated_mean_stat([], 1.0)
    with pytest.raises(ValueError):
        truncated_mean_stat([1.0], 0.0)
    with pytest.raises(ValueError):
        truncated_mean_stat([1.0], 1.0, 'cauchy')


def test_st_petersburg_reward():
    assert st_petersburg_reward(3) == 8.0
    assert st_petersburg_reward(1) == 2.0
    assert st_petersburg_reward(200) == 2.0 ** 63


def test_st_petersburg_draw_levels():
    rewards, cap_hits = st_petersburg_draw(np.random.default_rng(0), 100000)
    assert cap_hits == 0
    levels = np.log2(rewards)
    assert np.all(levels == np.round(levels)) and levels.min() >= 1
    # P(X = 2) = 1/2
    assert np.mean(rewards == 2.0) == pytest.approx(0.5, abs=0.01)


def test_st_petersburg_fair_stake():
    cfg = SimConfig(seed=7, replications=200, sample_sizes=(100000,), epsilon=0.5)
    report = st_petersburg_sim(cfg)
    row = report.row(100000)
    assert 0.8 <= row.median <= 1.3
    assert row.extras['cap_hits'] == 0


def test_st_petersburg_is_deterministic():
    cfg = SimConfig(seed=7, replications=20, sample_sizes=(10, 1000))
    assert st_petersburg_sim(cfg).to_csv() == st_petersburg_sim(cfg).to_csv()


def test_st_petersburg_needs_two_draws():
    with pytest.raises(ValueError):
        st_petersburg_sim(SimConfig(sample_sizes=(1, 10)))


def test_pareto_inverse_transform():
    # X = 1 / (1 - U), the uniform variate is the first draw of the stream
    rng = replication_rng(0, 5, 0)
    u = replication_rng(0, 5, 0).random(5)
    assert np.sum(1.0 / (1.0 - rng.random(5))) == pytest.approx(np.sum(1.0 / (1.0 - u)))
    assert 1.0 / (1.0 - 0.5) == 2.0


def test_pareto_ratio_concentrates():
    # the exceedance rate only falls like 1 / ln n, so neighbouring sizes
    # differ by a few percent and need thousands of replications to order
    cfg = SimConfig(seed=21, replications=4000, sample_sizes=(10000, 100000, 1000000),
                    epsilon=0.5)
    report = pareto_sim(cfg)
    assert 0.85 <= report.row(1000000).median <= 1.25
    probs = report.column('deviation_prob')
    assert probs[0] > probs[1] > probs[2]
    assert 'centered_median' in report.extra_columns


def test_exp_spacings_moments():
    assert exp_spacings_moments(np.ones(7))[0] == pytest.approx(7.0)
    assert exp_spacings_moments([1, 1])[0] == pytest.approx(2.0)
    assert exp_spacings_moments(np.zeros(4)) == (0.0, 0.0)
    # a = e_k picks the k-th order statistic: E X_(2) of 3 is 1/3 + 1/2
    assert exp_spacings_moments([0, 1, 0])[0] == pytest.approx(1 / 3 + 1 / 2)
    # a all ones gives the sum of n exponentials, variance n
    assert exp_spacings_moments(np.ones(5))[1] == pytest.approx(5.0)


def test_exp_spacings_stat():
    t, et = exp_spacings_stat([1, 2, 3], [3.0, 1.0, 2.0])
    assert t == 1 * 1 + 2 * 2 + 3 * 3
    assert et == pytest.approx(1 / 3 + 2 * (1 / 3 + 1 / 2) + 3 * (1 / 3 + 1 / 2 + 1))
    assert exp_spacings_stat(np.zeros(3), [1.0, 2.0, 3.0]) == (0.0, 0.0)
    with pytest.raises(ValueError):
        exp_spacings_stat([1, 2], [1.0])


def test_exp_spacings_monte_carlo():
    a = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    rng = np.random.default_rng(30)
    mean, var = exp_spacings_moments(a)
    t = np.concatenate([np.sort(rng.standard_exponential((1000000, 5)), axis=1) @ a
                        for _ in range(10)])
    assert t.mean() == pytest.approx(mean, abs=0.01)
    assert t.var() == pytest.approx(var, rel=0.02)


def test_spacings_sim():
    cfg = SimConfig(seed=31, replications=200, sample_sizes=(100, 1000, 10000), epsilon=0.1)
    report = spacings_sim(cfg)
    assert report.column('expected_t') == pytest.approx([100.0, 1000.0, 10000.0])
    for row in report.rows:
        assert abs(row.mean) < 0.15
    # Var T_n = n for unit weights
    assert report.column('bound') == pytest.approx([100 / math.log(n) for n in (100, 1000, 10000)])
