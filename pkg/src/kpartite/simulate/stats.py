from collections.abc import Callable

import numpy as np
from scipy.stats import iqr, norm

# тяжёлый хвост не должен раздувать histogram.csv
MAX_BINS = 10_000


def ks_statistic(samples, cdf: Callable[[np.ndarray], np.ndarray], floor: float = 0.0) -> float:
    """sup_{x ≥ floor} |F_n(x) − F(x)| для закона на [0, ∞), у которого возможен атом в нуле.

    cdf векторизована. При floor > 0 выборки из [0, floor) считаются атомом:
    при конечном ν он размазан около нуля, и сравнение начинается с floor.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("пустая выборка")

    F = np.clip(np.asarray(cdf(x), dtype=float), 0.0, 1.0)
    F_floor = float(np.clip(np.asarray(cdf(np.array([floor])), dtype=float)[0], 0.0, 1.0))
    i = np.arange(1, n + 1)

    # в самой точке floor: F_n(floor) против F(floor), в том числе атома при floor = 0
    edge = abs(np.searchsorted(x, floor, side="right") / n - F_floor)
    upper = i / n - F
    lower = F - (i - 1) / n
    d_plus = np.max(upper[x >= floor], initial=0.0)
    d_minus = np.max(lower[x > floor], initial=0.0)
    return float(max(d_plus, d_minus, edge))


def wilson_interval(successes: int, total: int, z: float | None = None) -> tuple[float, float]:
    """Доверительный интервал Уилсона для доли (по умолчанию 95%)."""
    if total <= 0:
        return 0.0, 1.0
    z = norm.ppf(0.975) if z is None else z
    p = successes / total
    z2 = z * z
    denom = 1.0 + z2 / total
    center = (p + z2 / (2.0 * total)) / denom
    margin = z * np.sqrt(p * (1.0 - p) / total + z2 / (4.0 * total * total)) / denom
    return float(max(0.0, center - margin)), float(min(1.0, center + margin))


def histogram(samples) -> tuple[np.ndarray, np.ndarray]:
    """Границы и плотности гистограммы, ширина бина по Фридману–Диаконису."""
    x = np.asarray(samples, dtype=float)
    spread = iqr(x)
    width = 2.0 * spread / np.cbrt(x.size) if spread > 0 else 0.0
    lo, hi = float(x.min()), float(x.max())
    if width <= 0 or hi <= lo:
        edges = np.array([lo, hi if hi > lo else lo + 1.0])
    else:
        bins = min(int(np.ceil((hi - lo) / width)), MAX_BINS)
        edges = np.linspace(lo, hi, bins + 1)
    density, edges = np.histogram(x, bins=edges, density=True)
    return edges, density
