from .base import (
    FixedDesign, DomainError, ModelError, SingularInformation, NotConverged,
    DomainEscape, SingularDesign, DimensionMismatch, DatasetError, MissingColumn,
    NonNumericCell, EmptyAfterFiltering, InvalidResponse,
)
from .expfam import (
    ExponentialFamily, Poisson, Bernoulli, GaussianUnitVar, Link, CanonicalLink,
    get_family, get_link, cumulant_eval, link_eval,
)
from .glm import (
    InitKind, FitOptions, FitResult, score, hessian, information, loglik, fit_mle,
    wald_intervals, wald_test,
)
from .diagnostics import ConditionReport, condition_report, growth_curve, nested_designs
from .dataset import DatasetSpec, NaPolicy, load_csv


__all__ = [
    'FixedDesign', 'DomainError', 'ModelError', 'SingularInformation', 'NotConverged',
    'DomainEscape', 'SingularDesign', 'DimensionMismatch', 'DatasetError',
    'MissingColumn', 'NonNumericCell', 'EmptyAfterFiltering', 'InvalidResponse',
    'ExponentialFamily', 'Poisson', 'Bernoulli', 'GaussianUnitVar', 'Link',
    'CanonicalLink', 'get_family', 'get_link', 'cumulant_eval', 'link_eval',
    'InitKind', 'FitOptions', 'FitResult', 'score', 'hessian', 'information', 'loglik',
    'fit_mle', 'wald_intervals', 'wald_test', 'ConditionReport', 'condition_report',
    'growth_curve', 'nested_designs', 'DatasetSpec', 'NaPolicy', 'load_csv',
]
