"""Canonical one-parameter exponential families and link functions.

A family has log-density ``eta * x - K(eta) + log h(x)``; the carrier ``h`` is
never evaluated, so log-likelihoods here are defined up to ``sum(log h(x_i))``.
A link supplies ``r``, mapping the linear predictor to the natural parameter.
"""
import math
import numpy as np
from abc import ABC, abstractmethod
from enum import Enum
from scipy.special import expit, logit
from .base import DomainError, InvalidResponse


__all__ = [
    'FamilyKind', 'LinkKind', 'ExponentialFamily', 'Poisson', 'Bernoulli',
    'GaussianUnitVar', 'Link', 'CanonicalLink', 'FAMILIES', 'LINKS',
    'get_family', 'get_link', 'cumulant_eval', 'link_eval',
]

BOUNDARY_TOL = 1e-8


class FamilyKind(Enum):
    POISSON = 'poisson'
    BERNOULLI = 'bernoulli'
    GAUSSIAN_UNIT_VAR = 'gaussian'


class LinkKind(Enum):
    CANONICAL = 'canonical'


class ExponentialFamily(ABC):
    natural_domain: tuple[float, float] = (-math.inf, math.inf)

    @property
    @abstractmethod
    def kind(self) -> FamilyKind:
        pass

    @abstractmethod
    def cumulant(self, eta: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Returns (K, K', K'') evaluated elementwise."""

    @abstractmethod
    def mean_inverse(self, mu: float) -> float:
        pass

    @abstractmethod
    def validate_response(self, y: np.ndarray):
        pass

    @abstractmethod
    def sample(self, mu: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        pass

    def start_mean(self, y: np.ndarray) -> float:
        return float(np.mean(y))

    def loglik_terms(self, y: np.ndarray, eta: np.ndarray) -> np.ndarray:
        return y * eta - self.cumulant(eta)[0]

    def at_boundary(self, y: np.ndarray, mu: np.ndarray) -> np.ndarray:
        """Observations whose fitted mean collapsed onto a boundary response."""
        return np.zeros(len(y), dtype=bool)

    def in_domain(self, eta: np.ndarray) -> bool:
        lo, hi = self.natural_domain
        return bool(np.all(np.isfinite(eta)) and np.all(eta > lo) and np.all(eta < hi))

    def __repr__(self) -> str:
        return f'{type(self).__name__}()'


class Poisson(ExponentialFamily):
    @property
    def kind(self):
        return FamilyKind.POISSON

    def cumulant(self, eta):
        with np.errstate(over='ignore'):
            k = np.exp(eta)
        return k, k, k

    def start_mean(self, y):
        # all-zero responses would start the intercept at -inf
        total = float(np.sum(y))
        return total / len(y) if total > 0 else (total + 0.5) / len(y)

    def mean_inverse(self, mu):
        return math.log(mu)

    def validate_response(self, y):
        if np.any(y < 0) or np.any(y != np.round(y)):
            raise InvalidResponse('Poisson responses must be nonnegative integers')

    def sample(self, mu, rng):
        return rng.poisson(mu).astype(float)

    def at_boundary(self, y, mu):
        return (y == 0) & (mu < BOUNDARY_TOL)


class Bernoulli(ExponentialFamily):
    @property
    def kind(self):
        return FamilyKind.BERNOULLI

    def cumulant(self, eta):
        eta = np.asarray(eta, dtype=float)
        # log(1 + e^eta) with the branch at zero keeps exp() from overflowing
        k = np.maximum(eta, 0.0) + np.log1p(np.exp(-np.abs(eta)))
        p = expit(eta)
        return k, p, p * (1.0 - p)

    def loglik_terms(self, y, eta):
        return -np.logaddexp(0.0, (1.0 - 2.0 * y) * eta)

    def start_mean(self, y):
        total = float(np.sum(y))
        if 0 < total < len(y):
            return total / len(y)
        return (total + 0.5) / (len(y) + 1)

    def mean_inverse(self, mu):
        return float(logit(mu))

    def validate_response(self, y):
        if np.any((y != 0) & (y != 1)):
            raise InvalidResponse('Bernoulli responses must be 0 or 1')

    def sample(self, mu, rng):
        return (rng.random(len(mu)) < mu).astype(float)

    def at_boundary(self, y, mu):
        return np.abs(y - mu) < BOUNDARY_TOL


class GaussianUnitVar(ExponentialFamily):
    @property
    def kind(self):
        return FamilyKind.GAUSSIAN_UNIT_VAR

    def cumulant(self, eta):
        eta = np.asarray(eta, dtype=float)
        return 0.5 * eta * eta, eta.copy(), np.ones_like(eta)

    def mean_inverse(self, mu):
        return float(mu)

    def validate_response(self, y):
        pass

    def sample(self, mu, rng):
        return mu + rng.standard_normal(len(mu))


class Link(ABC):
    @property
    @abstractmethod
    def kind(self) -> LinkKind:
        pass

    @abstractmethod
    def evaluate(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Returns (r, r', r'') evaluated elementwise."""

    @abstractmethod
    def inverse(self, eta: float) -> float:
        pass

    def __repr__(self) -> str:
        return f'{type(self).__name__}()'


class CanonicalLink(Link):
    @property
    def kind(self):
        return LinkKind.CANONICAL

    def evaluate(self, s):
        s = np.asarray(s, dtype=float)
        return s.copy(), np.ones_like(s), np.zeros_like(s)

    def inverse(self, eta):
        return float(eta)


FAMILIES: dict[str, type[ExponentialFamily]] = {
    FamilyKind.POISSON.value: Poisson,
    FamilyKind.BERNOULLI.value: Bernoulli,
    FamilyKind.GAUSSIAN_UNIT_VAR.value: GaussianUnitVar,
}

LINKS: dict[str, type[Link]] = {
    LinkKind.CANONICAL.value: CanonicalLink,
}


def get_family(name: str) -> ExponentialFamily:
    try:
        return FAMILIES[name.strip().lower()]()
    except KeyError:
        raise ValueError(f'Unknown family "{name}", expected one of {", ".join(FAMILIES)}')


def get_link(name: str) -> Link:
    try:
        return LINKS[name.strip().lower()]()
    except KeyError:
        raise ValueError(f'Unknown link "{name}", expected one of {", ".join(LINKS)}')


def cumulant_eval(family: ExponentialFamily, eta: float) -> tuple[float, float, float]:
    if not math.isfinite(eta):
        raise DomainError(f'Natural parameter must be finite, got {eta}')
    if not family.in_domain(np.array([eta])):
        raise DomainError(f'{eta} is outside the natural domain {family.natural_domain}')
    k, kdot, kddot = family.cumulant(np.array([eta], dtype=float))
    return float(k[0]), float(kdot[0]), float(kddot[0])


def link_eval(link: Link, s: float) -> tuple[float, float, float]:
    if not math.isfinite(s):
        raise DomainError(f'Linear predictor must be finite, got {s}')
    r, rp, rpp = link.evaluate(np.array([s], dtype=float))
    return float(r[0]), float(rp[0]), float(rpp[0])
