import math

import numpy as np
from scipy.stats import poisson

from src.config import settings
from src.logger import logger


def _poisson_cutoff(mu: float, tail: float) -> int:
    """Наименьшее N с P(Poisson(mu) > N) ≤ tail."""
    n = int(poisson.isf(tail, mu))
    while poisson.sf(n, mu) > tail:
        n += 1
    return max(n, 1)


def transient_matrix(generator: np.ndarray, t: float, tol: float | None = None) -> np.ndarray:
    """P(t) = exp(tQ) униформизацией с масштабированием и возведением в квадрат.

    P(h) для h = t/2^j (Λh ≤ 1) считается усечённым рядом Пуассона с хвостом
    ≤ tol/2^j, затем j раз возводится в квадрат; суммарная ошибка по строке ≤ tol.
    """
    tol = settings.UNIFORMIZATION_TOL if tol is None else tol
    n = generator.shape[0]
    identity = np.eye(n)
    if t <= 0:
        return identity

    lam = float(np.max(-np.diag(generator)))
    if lam <= 0:
        return identity

    squarings = max(0, math.ceil(math.log2(lam * t)))
    h = t / 2**squarings
    mu = lam * h
    cutoff = _poisson_cutoff(mu, tol / 2**squarings)

    jump = identity + generator / lam
    weights = poisson.pmf(np.arange(cutoff + 1), mu)
    term = identity
    result = weights[0] * identity
    for w in weights[1:]:
        term = term @ jump
        result += w * term

    for _ in range(squarings):
        result = result @ result

    logger.debug("Униформизация: n={}, Λt={:.3g}, N={}, возведений в квадрат={}", n, lam * t, cutoff, squarings)
    return result


def transient_distribution(generator: np.ndarray, p0: np.ndarray, t: float, tol: float | None = None) -> np.ndarray:
    return p0 @ transient_matrix(generator, t, tol)
