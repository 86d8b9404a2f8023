import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from .config import CliParser, parse_args, emit, split_floats, EXIT_OK, EXIT_INPUT
from .expfam import FAMILIES, get_family
from .limitlab import (
    SimConfig, SimReport, st_petersburg_sim, pareto_sim, spacings_sim, boosting_bound,
    boosting_sim, gc_sim, dkw_check, get_reference, kde_clt_check, dependent_mean_sim,
    iid_mean_sim, weighted_mean_sim, wald_coverage_sim, KernelKind,
)
from .report import clean_json


logger = logging.getLogger(__name__)

DEFAULT_GRID = (100, 1000, 10000)


def _dist(options, default: str):
    return get_reference(options.dist or default)


def _boosting(options, cfg: SimConfig) -> SimReport:
    return boosting_sim(options.delta, cfg)


def _gc(options, cfg: SimConfig) -> SimReport:
    return gc_sim(cfg, _dist(options, 'uniform'))


def _dkw(options, cfg: SimConfig) -> SimReport:
    return dkw_check(cfg, _dist(options, 'uniform'))


def _kde_clt(options, cfg: SimConfig) -> SimReport:
    dist = _dist(options, 'normal')
    points = split_floats(options.points, '--points')
    return kde_clt_check(
        dist.pdf, lambda rng, n: dist.rvs(size=n, random_state=rng), points, cfg,
        bandwidth_scale=options.bandwidth_scale, kernel=options.kernel)


def _dependent(options, cfg: SimConfig) -> SimReport:
    return dependent_mean_sim(options.rho, cfg)


def _khinchin(options, cfg: SimConfig) -> SimReport:
    return iid_mean_sim(cfg, _dist(options, 'exponential'))


def _wald(options, cfg: SimConfig) -> SimReport:
    beta = split_floats(options.beta, '--beta')
    return wald_coverage_sim(beta, cfg, get_family(options.family), options.level)


# name -> (runner, default sample sizes)
SIMULATORS: dict[str, tuple[Callable[[argparse.Namespace, SimConfig], SimReport],
                            tuple[int, ...]]] = {
    'stpetersburg': (lambda options, cfg: st_petersburg_sim(cfg), DEFAULT_GRID),
    'pareto': (lambda options, cfg: pareto_sim(cfg), (10000, 100000, 1000000)),
    'spacings': (lambda options, cfg: spacings_sim(cfg), DEFAULT_GRID),
    'boosting': (_boosting, (10, 50)),
    'gc': (_gc, DEFAULT_GRID),
    'dkw': (_dkw, DEFAULT_GRID),
    'kde-clt': (_kde_clt, (1000, 10000)),
    'dependent': (_dependent, DEFAULT_GRID),
    'khinchin': (_khinchin, DEFAULT_GRID),
    'weighted': (lambda options, cfg: weighted_mean_sim(cfg), DEFAULT_GRID),
    'wald': (_wald, (100, 500)),
}


def _grid(options) -> tuple[int, ...]:
    if options.n is not None:
        return (options.n,)
    if options.n_grid:
        try:
            return tuple(int(v) for v in options.n_grid.split(',') if v.strip())
        except ValueError:
            raise ValueError(f'Expecting a comma-separated list of integers, got "{options.n_grid}"')
    default = SIMULATORS[options.name][1]
    if options.name == 'boosting':
        # always include the sample size the Hoeffding bound asks for
        default = tuple(sorted(set(default) | {boosting_bound(options.delta, options.eps)}))
    return default


def sim(argv: Sequence[str] | None = None) -> int:
    parser = CliParser(
        prog='glm_limits sim',
        description='Runs a seeded Monte Carlo experiment for one limit theorem')
    parser.add_argument('name', choices=SIMULATORS.keys(), help='Experiment to run')
    parser.add_argument('-s', '--seed', type=int, default=0, help='Random seed')
    parser.add_argument('--reps', type=int, default=100, help='Replications per sample size')
    parser.add_argument('--n-grid', help='Comma-separated increasing sample sizes')
    parser.add_argument('-n', '--n', type=int, help='A single sample size, overrides --n-grid')
    parser.add_argument('-e', '--eps', type=float, default=0.1,
                        help='Deviation threshold, or failure probability for boosting')
    parser.add_argument('--delta', type=float, default=0.1,
                        help='Voter advantage over a coin toss, for boosting')
    parser.add_argument('--rho', type=float, default=0.5,
                        help='Autocorrelation decay, for dependent')
    parser.add_argument('--dist', help='Reference distribution: uniform, normal, exponential')
    parser.add_argument('--points', default='0,1',
                        help='Comma-separated evaluation points, for kde-clt')
    parser.add_argument('--bandwidth-scale', type=float, default=1.06,
                        help='Constant c in b_n = c sd n^(-1/5), for kde-clt')
    parser.add_argument('--kernel', choices=[k.value for k in KernelKind],
                        default=KernelKind.GAUSSIAN.value, help='Kernel, for kde-clt')
    parser.add_argument('--beta', default='1.0,0.5,-0.25',
                        help='Comma-separated true coefficients, for wald')
    parser.add_argument('-f', '--family', choices=FAMILIES.keys(), default='poisson',
                        help='Response distribution, for wald')
    parser.add_argument('--level', type=float, default=0.95,
                        help='Confidence level, for wald')
    parser.add_argument('--format', choices=['csv', 'json'], default='csv',
                        help='Output format')
    parser.add_argument('-o', '--output', help='Write the report here instead of stdout')
    options = parse_args(parser, argv)

    try:
        cfg = SimConfig(seed=options.seed, replications=options.reps,
                        sample_sizes=_grid(options), epsilon=options.eps)
        logger.info('Running %s with %d replications over n=%s',
                    options.name, cfg.replications, list(cfg.sample_sizes))
        report = SIMULATORS[options.name][0](options, cfg)
    except ValueError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_INPUT

    if options.format == 'json':
        emit(json.dumps(clean_json(report.to_dict()), indent=2) + '\n', options.output)
    else:
        emit(report.to_csv(), options.output)
    return EXIT_OK
