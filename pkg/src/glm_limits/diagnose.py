import json
import logging
import sys
import numpy as np
from collections.abc import Sequence
from .base import ModelError, DomainError
from .config import (
    CliParser, parse_args, add_dataset_arguments, add_fit_arguments, dataset_spec,
    fit_options, emit, split_floats, EXIT_OK, EXIT_INPUT,
)
from .dataset import load_csv
from .diagnostics import condition_report
from .expfam import get_family, get_link
from .glm import fit_mle
from .report import clean_json


logger = logging.getLogger(__name__)

LEVERAGE_WARNING = 0.5


def diagnose(argv: Sequence[str] | None = None) -> int:
    parser = CliParser(
        prog='glm_limits diagnose',
        description='Reports the checkable regularity conditions of a design')
    add_dataset_arguments(parser)
    add_fit_arguments(parser)
    parser.add_argument('-t', '--theta0',
                        help='Comma-separated reference theta, the fitted one by default')
    parser.add_argument('--strict', action='store_true',
                        help='Fail on a numerically singular design')
    parser.add_argument('--format', choices=['table', 'json'], default='table',
                        help='Output format')
    parser.add_argument('-o', '--output', help='Write the report here instead of stdout')
    options = parse_args(parser, argv)

    try:
        design = load_csv(dataset_spec(options))
        family = get_family(options.family)
        link = get_link(options.link)
        if options.theta0:
            theta0 = np.array(split_floats(options.theta0, '--theta0'))
            if len(theta0) != design.p:
                raise ValueError(f'--theta0 has {len(theta0)} values, design has p={design.p}')
        else:
            try:
                result = fit_mle(design, family, link, fit_options(options))
                theta0 = result.theta_hat
                if not result.converged:
                    logger.warning('Fit did not converge, using its last iterate: %s',
                                   result.message)
            except (ModelError, DomainError) as e:
                logger.warning('Cannot fit the model (%s), diagnosing at theta = 0', e)
                theta0 = np.zeros(design.p)
        report = condition_report(design, family, link, theta0, strict=options.strict)
    except (ValueError, DomainError, OSError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_INPUT

    if not report.positive_definite:
        logger.warning('Z Z\' is not positive definite (condition number %.3e)',
                       report.condition_number)
    if report.max_info_leverage > LEVERAGE_WARNING:
        logger.warning('A design point dominates the information: max leverage %.3f',
                       report.max_info_leverage)

    if options.format == 'json':
        emit(json.dumps(clean_json(report.to_dict()), indent=2) + '\n', options.output)
    else:
        emit(report.to_text(), options.output)
    return EXIT_OK
