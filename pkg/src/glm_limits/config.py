"""Shared command-line plumbing: parsers, config files, logging and output."""
import argparse
import logging
import sys
import tomllib
from collections.abc import Sequence
from .dataset import DatasetSpec, NaPolicy
from .expfam import FAMILIES, LINKS
from .glm import FitOptions


__all__ = [
    'EXIT_OK', 'EXIT_INPUT', 'EXIT_NOT_CONVERGED', 'CliParser', 'parse_args',
    'setup_logging', 'split_list', 'split_floats', 'emit', 'add_dataset_arguments',
    'add_fit_arguments', 'dataset_spec', 'fit_options',
]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_CONVERGED = 2


class CliParser(argparse.ArgumentParser):
    """Argument errors exit with 1, since 2 means an unconverged fit."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f'{self.prog}: error: {message}\n')


def _config_defaults(parser: argparse.ArgumentParser, path: str) -> dict:
    try:
        with open(path, 'rb') as f:
            data = tomllib.load(f)
    except (OSError, tomllib.TOMLDecodeError) as e:
        parser.error(f'cannot read config {path}: {e}')
    dests = {a.dest for a in parser._actions}
    defaults = {}
    for key, value in data.items():
        dest = key.replace('-', '_')
        if dest not in dests or dest in ('help', 'config'):
            parser.error(f'unknown key "{key}" in config {path}')
        if isinstance(value, list):
            value = ','.join(str(v) for v in value)
        defaults[dest] = value
    return defaults


def parse_args(parser: argparse.ArgumentParser, argv: Sequence[str] | None
               ) -> argparse.Namespace:
    """Parses flags on top of defaults from an optional --config TOML file."""
    parser.add_argument('--config', help='TOML file with flag values, flags override it')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Log progress, twice for every iteration')
    pre = CliParser(add_help=False)
    pre.add_argument('--config')
    known, _ = pre.parse_known_args(argv)
    if known.config:
        defaults = _config_defaults(parser, known.config)
        for action in parser._actions:
            if action.dest in defaults:
                action.required = False
        parser.set_defaults(**defaults)
    options = parser.parse_args(argv)
    setup_logging(options.verbose)
    return options


def setup_logging(verbosity: int = 0):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s',
                        stream=sys.stderr)


def split_list(value: str | None) -> list[str]:
    if not value:
        return []
    return [v.strip() for v in value.split(',') if v.strip()]


def split_floats(value: str | None, what: str) -> list[float]:
    try:
        return [float(v) for v in split_list(value)]
    except ValueError:
        raise ValueError(f'Expecting a comma-separated list of numbers for {what}, '
                         f'got "{value}"')


def emit(text: str, output: str | None):
    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def add_dataset_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('-d', '--data', required=True, help='Input CSV file with a header row')
    parser.add_argument('-r', '--response', required=True, help='Response column')
    parser.add_argument('-c', '--covariates', default='',
                        help='Comma-separated covariate columns, in order')
    parser.add_argument('--no-intercept', action='store_true',
                        help='Do not prepend an intercept row')
    parser.add_argument('--na-policy', choices=[p.value for p in NaPolicy],
                        default=NaPolicy.DROP_ROW.value,
                        help='What to do with rows having missing values')


def add_fit_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('-f', '--family', choices=FAMILIES.keys(), default='poisson',
                        help='Response distribution, default poisson')
    parser.add_argument('-l', '--link', choices=LINKS.keys(), default='canonical',
                        help='Link function')
    parser.add_argument('--max-iterations', type=int, default=FitOptions.max_iterations,
                        help='Fisher scoring iteration limit')
    parser.add_argument('--grad-tol', type=float, default=FitOptions.grad_tol,
                        help='Convergence tolerance on the largest score entry, default 1e-10. '
                             'It is multiplied by max(1, max_j sum_i |z_ji| max(1, |y_i|)) '
                             'unless --absolute-tol is given, so large counts can raise '
                             'it by many orders of magnitude; the applied value is '
                             'reported as grad_tol')
    parser.add_argument('--absolute-tol', action='store_true',
                        help='Use --grad-tol as is instead of scaling it by the data magnitude')


def dataset_spec(options: argparse.Namespace) -> DatasetSpec:
    return DatasetSpec(
        path=options.data,
        response_column=options.response.strip(),
        covariate_columns=split_list(options.covariates),
        add_intercept=not options.no_intercept,
        na_policy=NaPolicy(options.na_policy),
    )


def fit_options(options: argparse.Namespace) -> FitOptions:
    return FitOptions(
        max_iterations=options.max_iterations,
        grad_tol=options.grad_tol,
        scale_grad_tol=not options.absolute_tol,
    )
