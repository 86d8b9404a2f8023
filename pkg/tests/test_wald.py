import numpy as np
import pytest
from glm_limits.expfam import Bernoulli
from glm_limits.limitlab import SimConfig, synthetic_design, wald_coverage_sim

BETA = [0.5, 0.3, -0.2]


def test_synthetic_design():
    Z = synthetic_design(np.random.default_rng(0), 20, 3)
    assert Z.shape == (3, 20)
    assert np.all(Z[0] == 1.0)


def test_poisson_coverage_is_nominal():
    cfg = SimConfig(seed=1, replications=2000, sample_sizes=(500,))
    row = wald_coverage_sim(BETA, cfg).row(500)
    assert row.extras['failed'] == 0
    for j in range(3):
        assert 0.93 <= row.extras[f'coverage_{j}'] <= 0.97
    assert row.mean == pytest.approx(0.95, abs=0.02)


def test_bernoulli_coverage():
    cfg = SimConfig(seed=2, replications=200, sample_sizes=(400,))
    row = wald_coverage_sim(BETA, cfg, Bernoulli(), level=0.9).row(400)
    assert row.mean == pytest.approx(0.9, abs=0.06)


def test_wald_sim_is_deterministic():
    cfg = SimConfig(seed=3, replications=5, sample_sizes=(50, 100))
    assert wald_coverage_sim(BETA, cfg).to_csv() == wald_coverage_sim(BETA, cfg).to_csv()


def test_wald_sim_needs_more_rows_than_coefficients():
    with pytest.raises(ValueError):
        wald_coverage_sim(BETA, SimConfig(sample_sizes=(3,)))
