"""Score, Hessian and information of a fixed-design GLM, and its MLE.

With linear predictor s_i = theta'z_i and natural parameter r(s_i):

    U_n(theta) = sum z_i r'(s_i) [y_i - K'(r(s_i))]
    H_1n       = sum z_i z_i' K''(r(s_i)) r'(s_i)^2        (the information)
    H_2n       = sum z_i z_i' [y_i - K'(r(s_i))] r''(s_i)
    H_n        = -H_1n + H_2n

The fit iterates Fisher scoring steps I_n(theta) d = U_n(theta).
"""
import logging
import math
import numpy as np
from dataclasses import dataclass, field
from enum import Enum
from scipy.linalg import cho_factor, cho_solve, LinAlgError
from scipy.stats import norm
from .base import (
    FixedDesign, DomainError, SingularInformation, NotConverged, DomainEscape,
)
from .expfam import ExponentialFamily, Link


__all__ = [
    'InitKind', 'FitOptions', 'FitResult', 'score', 'hessian', 'information',
    'loglik', 'fit_mle', 'wald_intervals', 'wald_test',
]
logger = logging.getLogger(__name__)

# pivots this far apart mean a condition number beyond about 1e12
CHOLESKY_PIVOT_RATIO = 1e-6
# relative size of a scoring step that no longer moves theta
STEP_TOL = 1e-6


class InitKind(Enum):
    ZERO = 'zero'
    INTERCEPT_AT_TRANSFORMED_MEAN = 'intercept'


@dataclass
class FitOptions:
    max_iterations: int = 50
    grad_tol: float = 1e-10
    step_halving_max: int = 30
    init: InitKind = InitKind.INTERCEPT_AT_TRANSFORMED_MEAN
    scale_grad_tol: bool = False

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f'max_iterations must be at least 1, got {self.max_iterations}')
        if not self.grad_tol > 0:
            raise ValueError(f'grad_tol must be positive, got {self.grad_tol}')
        if self.step_halving_max < 0:
            raise ValueError(f'step_halving_max must be nonnegative, got {self.step_halving_max}')
        self.init = InitKind(self.init)


@dataclass
class FitResult:
    theta_hat: np.ndarray
    information: np.ndarray
    covariance: np.ndarray
    converged: bool
    iterations: int
    final_grad_norm: float
    loglik_trace: list[float] = field(default_factory=list)
    grad_tol: float = 1e-10
    separated: bool = False
    message: str = ''

    @property
    def std_errors(self) -> np.ndarray:
        return np.sqrt(np.diag(self.covariance))


class _Evaluation:
    """Per-observation quantities at one theta."""

    def __init__(self, theta, design: FixedDesign, family: ExponentialFamily, link: Link):
        self.s = design.linear_predictor(theta)
        self.r, self.rp, self.rpp = link.evaluate(self.s)
        if not family.in_domain(self.r):
            raise DomainError('Linear predictor maps outside the natural domain')
        self.k, self.kdot, self.kddot = family.cumulant(self.r)
        if not (np.all(np.isfinite(self.kdot)) and np.all(np.isfinite(self.kddot))):
            raise DomainError('Cumulant derivatives overflow at this linear predictor')
        self.resid = design.y - self.kdot


def _gram(Z: np.ndarray, w: np.ndarray) -> np.ndarray:
    g = (Z * w) @ Z.T
    return 0.5 * (g + g.T)


def score(theta, design: FixedDesign, family: ExponentialFamily, link: Link) -> np.ndarray:
    ev = _Evaluation(theta, design, family, link)
    return design.Z @ (ev.rp * ev.resid)


def hessian(theta, design: FixedDesign, family: ExponentialFamily, link: Link
            ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (H, H1, H2) with H = -H1 + H2."""
    ev = _Evaluation(theta, design, family, link)
    h1 = _gram(design.Z, ev.kddot * ev.rp ** 2)
    h2 = _gram(design.Z, ev.resid * ev.rpp)
    return -h1 + h2, h1, h2


def information(theta, design: FixedDesign, family: ExponentialFamily, link: Link
                ) -> np.ndarray:
    ev = _Evaluation(theta, design, family, link)
    return _gram(design.Z, ev.kddot * ev.rp ** 2)


def loglik(theta, design: FixedDesign, family: ExponentialFamily, link: Link) -> float:
    """Log-likelihood up to the additive constant sum(log h(y_i))."""
    ev = _Evaluation(theta, design, family, link)
    return float(np.sum(family.loglik_terms(design.y, ev.r)))


def _initial_theta(design: FixedDesign, family: ExponentialFamily, link: Link,
                   init: InitKind) -> np.ndarray:
    theta = np.zeros(design.p)
    if init == InitKind.INTERCEPT_AT_TRANSFORMED_MEAN:
        j = design.intercept_row()
        if j is not None:
            theta[j] = link.inverse(family.mean_inverse(family.start_mean(design.y)))
    return theta


def _factor(info: np.ndarray, where: str):
    try:
        factor = cho_factor(info, lower=True)
    except (LinAlgError, ValueError):
        raise SingularInformation(f'Information matrix is not positive definite {where}')
    # exactly collinear rows can leave a rounding-level positive pivot
    d = np.abs(np.diag(factor[0]))
    if d.min() <= CHOLESKY_PIVOT_RATIO * d.max():
        raise SingularInformation(f'Information matrix is numerically singular {where}')
    return factor


def _step_is_negligible(step: np.ndarray, theta: np.ndarray) -> bool:
    return float(np.max(np.abs(step))) <= STEP_TOL * (1.0 + float(np.max(np.abs(theta))))


def _safe_loglik(theta, design, family, link) -> float:
    try:
        value = loglik(theta, design, family, link)
    except DomainError:
        return -math.inf
    return value if math.isfinite(value) else -math.inf


def fit_mle(design: FixedDesign, family: ExponentialFamily, link: Link,
            opts: FitOptions | None = None) -> FitResult:
    opts = opts or FitOptions()
    family.validate_response(design.y)

    tol = opts.grad_tol
    if opts.scale_grad_tol:
        scale = np.abs(design.Z) @ np.maximum(1.0, np.abs(design.y))
        tol *= max(1.0, float(np.max(scale)))

    theta = _initial_theta(design, family, link, opts.init)
    ll = loglik(theta, design, family, link)
    trace = [ll]
    iterations = 0
    converged = False
    boundary = False
    message = ''

    while True:
        ev = _Evaluation(theta, design, family, link)
        u = design.Z @ (ev.rp * ev.resid)
        grad_norm = float(np.max(np.abs(u)))
        boundary = bool(np.any(family.at_boundary(design.y, ev.kdot)))
        logger.debug('iteration %d: loglik=%.12g, |score|=%.3e', iterations, ll, grad_norm)
        info = _gram(design.Z, ev.kddot * ev.rp ** 2)
        try:
            factor = _factor(info, f'at iteration {iterations}')
        except SingularInformation:
            if not boundary:
                raise
            message = f'Information vanished at iteration {iterations}'
            break
        step = cho_solve(factor, u)

        if grad_norm <= tol and (not boundary or _step_is_negligible(step, theta)):
            # under separation the score vanishes but scoring steps stay large
            converged = True
            break
        if iterations >= opts.max_iterations:
            message = f'No convergence after {iterations} iterations'
            break

        t = 1.0
        accepted = False
        saw_finite = False
        for halving in range(opts.step_halving_max + 1):
            candidate = theta + t * step
            ll_new = _safe_loglik(candidate, design, family, link)
            saw_finite = saw_finite or math.isfinite(ll_new)
            if ll_new >= ll - 1e-12 * (1.0 + abs(ll)):
                accepted = True
                break
            t *= 0.5
        if not accepted:
            if not saw_finite:
                raise DomainEscape(
                    f'Linear predictor left the natural domain at iteration {iterations} '
                    f'and {opts.step_halving_max} step halvings did not recover')
            message = f'Step halving exhausted at iteration {iterations}'
            break
        if halving:
            logger.info('iteration %d: step halved %d times', iterations, halving)
        theta, ll = candidate, ll_new
        trace.append(ll)
        iterations += 1

    separated = boundary and not converged
    if separated:
        message = (f'{message}; fitted means collapsed onto boundary responses '
                   '(separation), the MLE does not exist at finite theta')
        logger.info(message)

    info = information(theta, design, family, link)
    try:
        covariance = cho_solve(_factor(info, 'at the final iterate'), np.eye(design.p))
        covariance = 0.5 * (covariance + covariance.T)
    except SingularInformation:
        if converged:
            raise
        covariance = np.full((design.p, design.p), np.nan)

    return FitResult(
        theta_hat=theta,
        information=info,
        covariance=covariance,
        converged=converged,
        iterations=iterations,
        final_grad_norm=grad_norm,
        loglik_trace=trace,
        grad_tol=tol,
        separated=separated,
        message=message,
    )


def _check_level(level: float):
    if not 0 < level < 1:
        raise ValueError(f'Confidence level must be in (0, 1), got {level}')


def wald_intervals(fit: FitResult, level: float = 0.95) -> list[tuple[float, float]]:
    if not fit.converged:
        raise NotConverged('Wald intervals need a converged fit', fit)
    _check_level(level)
    z = float(norm.ppf(0.5 * (1.0 + level)))
    se = fit.std_errors
    theta = np.asarray(fit.theta_hat, dtype=float)
    return [(float(t - z * s), float(t + z * s)) for t, s in zip(theta, se)]


def wald_test(fit: FitResult, index: int, value: float = 0.0) -> tuple[float, float]:
    """z statistic and two-sided p-value for theta[index] == value."""
    if not fit.converged:
        raise NotConverged('Wald tests need a converged fit', fit)
    z = float((fit.theta_hat[index] - value) / fit.std_errors[index])
    return z, float(2.0 * norm.sf(abs(z)))
