import math
from fractions import Fraction

import numpy as np
from scipy.special import logsumexp

from ..errors import LevelOutOfRange
from ..schema import AsymptoticMean, BDBranch, NetworkSpec, PotentialCoeffs, to_fraction


def from_component(spec: NetworkSpec, k: int) -> BDBranch:
    """Ветвь B_k агрегированной цепи как процесс рождения и гибели."""
    return BDBranch.standard(spec.size(k), spec.rate(k))


def log_level_weights(branch: BDBranch, nu: float) -> np.ndarray:
    """log π_l − log π_1 для l = 1..L, π_{l+1}/π_l = a_l f / d_{l+1}."""
    log_f = branch.rate.log_value(nu)
    logs = np.zeros(branch.size)
    for l in range(1, branch.size):
        logs[l] = logs[l - 1] + math.log(branch.a(l)) + log_f - math.log(branch.d(l + 1))
    return logs


def potential_coeffs(branch: BDBranch, nu: float) -> PotentialCoeffs:
    """ξ_L = 1, ξ_{l−1} = ξ_l · d_l / (a_{l−1} f): потенциалы, симметризующие генератор."""
    logs = log_level_weights(branch, nu)
    top = logs[-1]
    return PotentialCoeffs(log_xi=tuple(float(v - top) for v in logs[::-1]))


def _check_level(branch: BDBranch, l: int, low: int = 1) -> None:
    if not low <= l <= branch.size:
        raise LevelOutOfRange(f"уровень {l} вне {low}..{branch.size}")


def mean_fall_time(branch: BDBranch, l: int, nu: float) -> float:
    """E T_{l,l−1} = (1/d_l) Σ_{n≥l} π_n/π_l."""
    _check_level(branch, l)
    logs = log_level_weights(branch, nu)
    return math.exp(logsumexp(logs[l - 1:]) - logs[l - 1]) / branch.d(l)


def mean_hitting(branch: BDBranch, l1: int, l2: int, nu: float) -> float:
    """E T_{l1,l2} для l1 ≥ l2; при l1 = l2 — 0."""
    _check_level(branch, l1, low=0)
    _check_level(branch, l2, low=0)
    if l1 < l2:
        raise LevelOutOfRange(f"ожидалось l1 ≥ l2, получено l1={l1}, l2={l2}")
    return math.fsum(mean_fall_time(branch, l, nu) for l in range(l2 + 1, l1 + 1))


def asym_mean_hitting(branch: BDBranch, l2: int) -> AsymptoticMean:
    """E T_{l1,l2} ~ (1/d_{l2+1}) Π_{i=l2+1}^{L−1} (a_i/d_{i+1}) · f(ν)^{L−l2−1}."""
    if not 0 <= l2 < branch.size:
        raise LevelOutOfRange(f"ожидалось 0 ≤ l2 < L={branch.size}, получено {l2}")

    coefficient = 1 / to_fraction(branch.d(l2 + 1))
    for i in range(l2 + 1, branch.size):
        coefficient *= to_fraction(branch.a(i)) / to_fraction(branch.d(i + 1))

    power = branch.size - l2 - 1
    c, a = branch.rate.power(power)
    return AsymptoticMean(coefficient=coefficient * c, exponent=a if power else Fraction(0))
