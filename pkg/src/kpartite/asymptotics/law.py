import math
from functools import lru_cache

import mpmath
import numpy as np
from scipy.interpolate import PchipInterpolator

from src.config import settings
from src.logger import logger

from ..errors import InversionUnstable
from ..schema import BranchClassification, LimitLaw

# строки таблицы, заданные только через преобразование Лапласа
NUMERICAL_ROWS = frozenset({"1b", "1d", "2b", "2d"})
CLOSED_ROWS = frozenset({"1a", "1b*", "1c", "2a", "2b*", "2b**", "2b***", "2c", "2c*", "3"})

TABLE_POINTS = 1201


def limit_law(classification: BranchClassification) -> LimitLaw:
    alpha = float(classification.alpha)
    attracting = tuple(
        (float(classification.gamma[k]), float(classification.beta[k])) for k in classification.partition_A
    )
    gamma_S = float(classification.gamma_S)
    gamma_N = float(classification.gamma_N)

    # атом в нуле есть только при α = 0 и S = ∅: lim_{s→∞} L_W(s) = 1/(1 + β_A)
    if classification.alpha == 0 and not classification.partition_S:
        atom = float(1 / (1 + classification.beta_A))
    else:
        atom = 0.0

    return LimitLaw(
        scenario=classification.scenario,
        alpha=alpha,
        atom=atom,
        attracting=attracting,
        gamma_S=gamma_S,
        gamma_N=gamma_N,
        mean=float(classification.alpha + (1 - classification.alpha) * (1 - classification.gamma_N)),
    )


# ── Преобразование Лапласа ──────────────────────────────────────────────────

def laplace_W(law: LimitLaw, s):
    total = 1 + law.gamma_S * s
    for gamma, beta in law.attracting:
        total += gamma * s / (1 + gamma * s / beta)
    return 1 / total


def laplace(law: LimitLaw, s):
    """L_Z(s) = (1 + αs)^{-1} L_W((1 − α)s); s может быть комплексным mpmath-числом."""
    if law.alpha == 1:
        return 1 / (1 + s)
    return laplace_W(law, (1 - law.alpha) * s) / (1 + law.alpha * s)


# ── Замкнутые формы ─────────────────────────────────────────────────────────

def _exp_cdf(x, mean):
    return -np.expm1(-x / mean)


def _exp_pdf(x, mean):
    return np.exp(-x / mean) / mean


def _hypo_cdf(x, r1, r2):
    if math.isclose(r1, r2, rel_tol=1e-12):
        return 1 - np.exp(-r1 * x) * (1 + r1 * x)
    return 1 - (r2 * np.exp(-r1 * x) - r1 * np.exp(-r2 * x)) / (r2 - r1)


def _hypo_pdf(x, r1, r2):
    if math.isclose(r1, r2, rel_tol=1e-12):
        return r1 * r1 * x * np.exp(-r1 * x)
    return r1 * r2 * (np.exp(-r1 * x) - np.exp(-r2 * x)) / (r2 - r1)


def _geometric_parameters(law: LimitLaw) -> tuple[float, float]:
    """(p, λ): атом геометрической суммы 1/(1+β_A) и общая скорость β_k/γ_k."""
    p = 1 / (1 + law.beta_A)
    lam = law.beta_A / law.gamma_A
    return p, lam


def _closed(law: LimitLaw, x: np.ndarray, density: bool) -> np.ndarray:
    scenario, alpha = law.scenario, law.alpha
    exp_ = _exp_pdf if density else _exp_cdf
    hypo = _hypo_pdf if density else _hypo_cdf

    if scenario == "1a":
        return np.zeros_like(x) if density else np.ones_like(x)
    if scenario in ("3", "2b***"):
        return exp_(x, 1.0)
    if scenario == "1c":
        return exp_(x, law.gamma_S)
    if scenario == "2a":
        return exp_(x, alpha)
    if scenario == "2b**":
        return exp_(x, alpha * (1 + law.beta_A))
    if scenario == "2c":
        return hypo(x, 1 / alpha, 1 / ((1 - alpha) * law.gamma_S))
    if scenario == "2c*":
        return hypo(x, 1 / alpha, 1 / alpha)
    if scenario == "1b*":
        p, lam = _geometric_parameters(law)
        if density:
            return (1 - p) * p * lam * np.exp(-p * lam * x)
        return 1 - (1 - p) * np.exp(-p * lam * x)
    if scenario == "2b*":
        p, lam = _geometric_parameters(law)
        rate = p * lam / (1 - alpha)
        return p * exp_(x, alpha) + (1 - p) * hypo(x, 1 / alpha, rate)
    raise KeyError(scenario)


# ── Численное обращение ─────────────────────────────────────────────────────

def _invert(law: LimitLaw, x: float, density: bool) -> float:
    atom = law.atom

    def transform(s):
        value = laplace(law, s) - atom
        return value if density else value / s

    with mpmath.workdps(settings.MP_DPS):
        if x == 0:
            if not density:
                return atom
            # начальное значение: lim s·(L_Z(s) − атом)
            s = mpmath.mpf(10) ** 15
            return float(s * (laplace(law, s) - atom))
        value = mpmath.invertlaplace(transform, x, method="talbot", degree=settings.TALBOT_DEGREE)

    value = float(mpmath.re(value))
    if not math.isfinite(value):
        raise InversionUnstable(x, x, f"(сценарий {law.scenario}: {value})")
    if density:
        return max(value, 0.0)
    total = atom + value
    if total < -1e-6 or total > 1 + 1e-6:
        raise InversionUnstable(x, x, f"(сценарий {law.scenario}: CDF = {total})")
    return min(1.0, max(0.0, total))


def law_cdf(law: LimitLaw, x: float, numerical: bool = False) -> float:
    if x < 0:
        return 0.0
    if law.scenario == "1a":
        return 1.0
    if not numerical and law.scenario in CLOSED_ROWS:
        return float(np.clip(_closed(law, np.asarray(float(x)), density=False), 0.0, 1.0))
    return _invert(law, float(x), density=False)


def law_pdf(law: LimitLaw, x: float, numerical: bool = False) -> float:
    """Плотность абсолютно непрерывной части (без атома)."""
    if x < 0 or law.scenario == "1a":
        return 0.0
    if not numerical and law.scenario in CLOSED_ROWS:
        return float(_closed(law, np.asarray(float(x)), density=True))
    return _invert(law, float(x), density=True)


@lru_cache(maxsize=32)
def _table(law: LimitLaw) -> tuple[np.ndarray, PchipInterpolator, PchipInterpolator]:
    """Монотонные интерполянты CDF и плотности для численно заданных законов."""
    x_max = 10 * max(law.mean, 1e-3)
    for _ in range(20):
        if law_cdf(law, x_max) > 1 - 1e-8:
            break
        x_max *= 2
    grid = np.linspace(0.0, x_max, TABLE_POINTS)
    cdf = np.maximum.accumulate(np.array([law_cdf(law, x) for x in grid]))
    pdf = np.array([law_pdf(law, x) for x in grid])
    logger.debug("Таблица закона {}: x_max={:.4g}, {} узлов", law.scenario, x_max, grid.size)
    return grid, PchipInterpolator(grid, cdf, extrapolate=False), PchipInterpolator(grid, pdf, extrapolate=False)


def law_cdf_array(law: LimitLaw, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    if law.scenario in CLOSED_ROWS:
        values = np.clip(_closed(law, np.maximum(xs, 0.0), density=False), 0.0, 1.0)
    else:
        grid, cdf, _ = _table(law)
        values = np.where(xs > grid[-1], 1.0, np.nan_to_num(cdf(np.clip(xs, 0.0, grid[-1])), nan=1.0))
    return np.where(xs < 0, 0.0, values)


def law_pdf_array(law: LimitLaw, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    if law.scenario in CLOSED_ROWS:
        values = _closed(law, np.maximum(xs, 0.0), density=True)
    else:
        grid, _, pdf = _table(law)
        values = np.where(xs > grid[-1], 0.0, np.nan_to_num(pdf(np.clip(xs, 0.0, grid[-1]))))
    return np.where(xs < 0, 0.0, values)


def law_mean(law: LimitLaw) -> float:
    return law.mean


def law_quantile(law: LimitLaw, q: float, tol: float = 1e-10) -> float:
    if q <= law_cdf(law, 0.0):
        return 0.0
    lo, hi = 0.0, max(law.mean, 1e-6)
    while law_cdf(law, hi) < q:
        lo, hi = hi, 2 * hi
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if law_cdf(law, mid) < q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def atom_floor(law: LimitLaw, margin: float | None = None) -> float:
    """Порог, ниже которого масштабированные выборки относятся к атому в нуле.

    Квантиль уровня atom + margin·(1 − atom). Для законов без атома и для 1a порог 0.
    """
    if law.atom <= 0 or law.atom >= 1:
        return 0.0
    margin = settings.KS_ATOM_MARGIN if margin is None else margin
    return law_quantile(law, law.atom + margin * (1 - law.atom))
