import json
import math
import numpy as np
from dataclasses import dataclass
from typing import Any
from .base import FixedDesign
from .diagnostics import ConditionReport, condition_report
from .expfam import ExponentialFamily, Link
from .glm import FitResult, wald_intervals, wald_test


__all__ = ['FitReport', 'build_fit_report', 'clean_json', 'format_number']


def clean_json(value: Any) -> Any:
    """Converts numpy values to plain ones and non-finite floats to None."""
    if isinstance(value, dict):
        return {k: clean_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [clean_json(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    return value


def format_number(value: float, digits: int = 4) -> str:
    if value is None or not math.isfinite(value):
        return 'nan'
    return f'{value:.{digits - 1}e}'


@dataclass
class FitReport:
    names: list[str]
    family: str
    link: str
    fit: FitResult
    level: float
    intervals: list[tuple[float, float]]
    z_scores: list[float]
    p_values: list[float]
    diagnostics: ConditionReport
    loglik: float
    dropped_rows: int = 0

    @property
    def coefficients(self) -> dict[str, float]:
        return {k: float(v) for k, v in zip(self.names, self.fit.theta_hat)}

    @property
    def std_errors(self) -> dict[str, float]:
        return {k: float(v) for k, v in zip(self.names, self.fit.std_errors)}

    def convergence(self) -> dict:
        return {
            'converged': self.fit.converged,
            'iterations': self.fit.iterations,
            'final_grad_norm': self.fit.final_grad_norm,
            'grad_tol': self.fit.grad_tol,
            'separated': self.fit.separated,
            'loglik': self.loglik,
            'dropped_rows': self.dropped_rows,
        }

    def to_dict(self) -> dict:
        return clean_json({
            'family': self.family,
            'link': self.link,
            'level': self.level,
            'coefficients': self.coefficients,
            'covariance': self.fit.covariance,
            'std_errors': self.std_errors,
            'intervals': {k: list(iv) for k, iv in zip(self.names, self.intervals)},
            'wald_tests': {k: {'z': z, 'p_value': pv} for k, z, pv
                           in zip(self.names, self.z_scores, self.p_values)},
            'diagnostics': self.diagnostics.to_dict(),
            'convergence': self.convergence(),
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + '\n'

    def to_table(self, digits: int = 4) -> str:
        def fmt(v) -> str:
            return format_number(v, digits)

        width = max(12, digits + 8)
        name_width = max(len(n) for n in self.names) + 2
        pct = f'{self.level * 100:g}%'
        lines = [
            f'{self.family} regression, {self.link} link, n={self.diagnostics.n}'
            + (f' ({self.dropped_rows} rows dropped)' if self.dropped_rows else ''),
            f'Converged in {self.fit.iterations} iterations, |score| = '
            f'{fmt(self.fit.final_grad_norm)}, log-likelihood = {fmt(self.loglik)}',
            '',
            ''.join([' ' * name_width] + [h.rjust(width) for h in (
                'estimate', 'std_error', f'{pct} lower', f'{pct} upper', 'z', 'p_value')]),
        ]
        for j, name in enumerate(self.names):
            lo, hi = self.intervals[j]
            values = (self.fit.theta_hat[j], self.fit.std_errors[j], lo, hi,
                      self.z_scores[j], self.p_values[j])
            lines.append(name.ljust(name_width) + ''.join(fmt(v).rjust(width) for v in values))

        lines.extend(['', 'Covariance:'])
        for j, name in enumerate(self.names):
            lines.append(name.ljust(name_width)
                         + ''.join(fmt(v).rjust(width) for v in self.fit.covariance[j]))

        lines.extend(['', 'Diagnostics:'])
        for k, v in self.diagnostics.to_dict().items():
            if isinstance(v, bool) or isinstance(v, int):
                text = str(v).lower() if isinstance(v, bool) else str(v)
            elif isinstance(v, float):
                text = fmt(v)
            elif isinstance(v, list):
                text = ', '.join(fmt(x) for x in v)
            else:
                text = ', '.join(f'{ck} ({cv})' for ck, cv in v.items())
            lines.append(f'  {k} = {text}')
        return '\n'.join(lines) + '\n'


def build_fit_report(design: FixedDesign, family: ExponentialFamily, link: Link,
                     fit: FitResult, level: float = 0.95) -> FitReport:
    """Wald inference and regularity diagnostics at the fitted theta."""
    intervals = wald_intervals(fit, level)
    tests = [wald_test(fit, j) for j in range(design.p)]
    return FitReport(
        names=design.names,
        family=family.kind.value,
        link=link.kind.value,
        fit=fit,
        level=level,
        intervals=intervals,
        z_scores=[t[0] for t in tests],
        p_values=[t[1] for t in tests],
        diagnostics=condition_report(design, family, link, fit.theta_hat),
        loglik=fit.loglik_trace[-1],
        dropped_rows=design.dropped_rows,
    )
