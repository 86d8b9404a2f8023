"""Checkable regularity conditions for a fixed design at a reference theta.

The report covers what can be computed at finite n: the smallest eigenvalues
of Z Z' and of the information (design and information growth), the largest
leverages (no dominating design point), and the ranges of r, r' and r'' over
the design (the boundedness constants). Conditions stated as probability
limits are listed in ``unchecked`` and never evaluated.
"""
import math
import numpy as np
from dataclasses import dataclass, field, asdict
from collections.abc import Sequence
from .base import FixedDesign, SingularDesign, DimensionMismatch
from .expfam import ExponentialFamily, Link
from .glm import information


__all__ = ['ConditionReport', 'leverages', 'condition_report', 'growth_curve',
           'nested_designs', 'CONDITION_LIMIT', 'UNCHECKED']

CONDITION_LIMIT = 1e12
UNCHECKED = {
    'C6b': 'asymptotic, not checked',
    'C6c': 'asymptotic, not checked',
    'C7': 'asymptotic, not checked',
}


@dataclass
class ConditionReport:
    n: int
    p: int
    lambda_min_ZZt: float
    max_leverage: float
    info_lambda_min: float
    max_info_leverage: float
    link_deriv_range: tuple[float, float]
    link_second_max: float
    natural_param_range: tuple[float, float]
    positive_definite: bool
    info_positive_definite: bool
    condition_number: float
    min_info_weight: float
    info_lower_bound: float
    leverage_sum: float
    info_leverage_sum: float
    unchecked: dict[str, str] = field(default_factory=lambda: dict(UNCHECKED))

    def to_dict(self) -> dict:
        d = asdict(self)
        d['link_deriv_range'] = list(self.link_deriv_range)
        d['natural_param_range'] = list(self.natural_param_range)
        return d

    def to_text(self) -> str:
        lines = []
        for k, v in self.to_dict().items():
            if isinstance(v, list):
                v = ','.join(repr(x) for x in v)
            elif isinstance(v, dict):
                v = ','.join(f'{ck}:{cv}' for ck, cv in v.items())
            elif isinstance(v, bool):
                v = str(v).lower()
            elif isinstance(v, float):
                v = repr(v)
            lines.append(f'{k}={v}')
        return '\n'.join(lines) + '\n'


def _spectrum(m: np.ndarray) -> tuple[float, float, bool]:
    """Returns (lambda_min, condition number, positive definite)."""
    eig = np.linalg.eigvalsh(m)
    lo, hi = float(eig[0]), float(eig[-1])
    cond = math.inf if lo <= 0 else hi / lo
    pd = hi > 0 and cond <= CONDITION_LIMIT
    return (lo if pd else 0.0), cond, pd


def leverages(matrix: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """z_i' M^-1 z_i for every column of Z.

    A singular M falls back to the pseudo-inverse, so the leverages sum to
    the rank of M instead of p.
    """
    _, _, pd = _spectrum(matrix)
    inv = np.linalg.inv(matrix) if pd else np.linalg.pinv(
        matrix, 1.0 / CONDITION_LIMIT, hermitian=True)
    return np.einsum('ji,jk,ki->i', Z, inv, Z)


def condition_report(design: FixedDesign, family: ExponentialFamily, link: Link,
                     theta0, strict: bool = False) -> ConditionReport:
    theta0 = np.asarray(theta0, dtype=float).reshape(-1)
    Z = design.Z
    zzt = Z @ Z.T
    zzt = 0.5 * (zzt + zzt.T)
    lam, cond, pd = _spectrum(zzt)
    if strict and not pd:
        raise SingularDesign(f'Z Z\' is numerically singular (condition number {cond:.3e})')

    s = design.linear_predictor(theta0)
    r, rp, rpp = link.evaluate(s)
    _, _, kddot = family.cumulant(r)
    weights = kddot * rp ** 2

    info = information(theta0, design, family, link)
    info_lam, _, info_pd = _spectrum(info)
    lev = leverages(zzt, Z)
    info_lev = leverages(info, Z)

    return ConditionReport(
        n=design.n,
        p=design.p,
        lambda_min_ZZt=lam,
        max_leverage=float(np.max(lev)),
        info_lambda_min=info_lam,
        max_info_leverage=float(np.max(info_lev)),
        link_deriv_range=(float(np.min(rp)), float(np.max(rp))),
        link_second_max=float(np.max(np.abs(rpp))),
        natural_param_range=(float(np.min(r)), float(np.max(r))),
        positive_definite=pd,
        info_positive_definite=info_pd,
        condition_number=cond,
        min_info_weight=float(np.min(weights)),
        info_lower_bound=lam * float(np.min(weights)),
        leverage_sum=float(np.sum(lev)),
        info_leverage_sum=float(np.sum(info_lev)),
    )


def nested_designs(design: FixedDesign, sizes: Sequence[int]) -> list[FixedDesign]:
    if list(sizes) != sorted(set(sizes)):
        raise ValueError(f'Sizes must be strictly increasing, got {list(sizes)}')
    if sizes and sizes[-1] > design.n:
        raise DimensionMismatch(f'Largest size {sizes[-1]} exceeds n={design.n}')
    return [design.prefix(size) for size in sizes]


def growth_curve(designs: Sequence[FixedDesign], family: ExponentialFamily, link: Link,
                 theta0) -> list[ConditionReport]:
    if not designs:
        return []
    p = designs[0].p
    for d in designs:
        if d.p != p:
            raise DimensionMismatch(f'Designs must share p, got {p} and {d.p}')
    return [condition_report(d, family, link, theta0) for d in designs]
