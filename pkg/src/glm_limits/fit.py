import logging
import sys
from collections.abc import Sequence
from .base import NotConverged, DomainError
from .config import (
    CliParser, parse_args, add_dataset_arguments, add_fit_arguments, dataset_spec,
    fit_options, emit, EXIT_OK, EXIT_INPUT, EXIT_NOT_CONVERGED,
)
from .dataset import load_csv
from .expfam import get_family, get_link
from .glm import fit_mle
from .report import build_fit_report


logger = logging.getLogger(__name__)


def fit(argv: Sequence[str] | None = None) -> int:
    parser = CliParser(
        prog='glm_limits fit',
        description='Fits a fixed-design GLM by maximum likelihood, with Wald intervals '
                    'and regularity diagnostics')
    add_dataset_arguments(parser)
    add_fit_arguments(parser)
    parser.add_argument('--level', type=float, default=0.95,
                        help='Confidence level of the Wald intervals, default 0.95')
    parser.add_argument('--format', choices=['table', 'json'], default='table',
                        help='Output format')
    parser.add_argument('--digits', type=int, default=4,
                        help='Significant digits in the table, default 4')
    parser.add_argument('-o', '--output', help='Write the report here instead of stdout')
    options = parse_args(parser, argv)
    if not 1 <= options.digits <= 17:
        parser.error(f'--digits must be between 1 and 17, got {options.digits}')

    try:
        design = load_csv(dataset_spec(options))
        family = get_family(options.family)
        link = get_link(options.link)
        result = fit_mle(design, family, link, fit_options(options))
        if not result.converged:
            raise NotConverged(result.message or 'Fit did not converge', result)
        report = build_fit_report(design, family, link, result, options.level)
    except NotConverged as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except (ValueError, DomainError, OSError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_INPUT

    logger.info('Fitted %d coefficients on %d rows in %d iterations',
                design.p, design.n, result.iterations)
    if options.format == 'json':
        emit(report.to_json(), options.output)
    else:
        emit(report.to_table(options.digits), options.output)
    return EXIT_OK
