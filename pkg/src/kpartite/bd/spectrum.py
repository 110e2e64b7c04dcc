import math

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal, svdvals

from src.logger import logger

from ..errors import DiscsOverlap, IllConditioned, NumericError
from ..model.transient import transient_matrix
from ..schema import BDBranch, Spectrum

SEPARATION_RTOL = 1e-12
COLLISION_RTOL = 1e-9


def symmetrized_generator(branch: BDBranch, nu: float) -> tuple[np.ndarray, np.ndarray]:
    """Диагональ и наддиагональ G(ν) = −D^{1/2} T D^{−1/2} в порядке уровней 1..L."""
    f = branch.rate(nu)
    L = branch.size
    diagonal = np.array([branch.d(l) + branch.a(l) * f for l in range(1, L + 1)])
    off = np.array([-math.sqrt(branch.d(l + 1) * branch.a(l) * f) for l in range(1, L)])
    return diagonal, off


def bidiagonal_factor(branch: BDBranch, nu: float) -> np.ndarray:
    """Верхняя двухдиагональная R с G(ν) = R Rᵀ.

    Столбец l отвечает ребру (l−1, l) квадратичной формы: √d_l на диагонали и
    −√(a_{l−1} f) над ней; элементы вычисляются без вычитаний.
    """
    L = branch.size
    sqrt_f = math.sqrt(branch.rate(nu))
    factor = np.zeros((L, L))
    for l in range(1, L + 1):
        factor[l - 1, l - 1] = math.sqrt(branch.d(l))
        if l < L:
            factor[l - 1, l] = -math.sqrt(branch.a(l)) * sqrt_f
    return factor


def escape_spectrum(branch: BDBranch, nu: float) -> Spectrum:
    """Собственные числа −T(ν) как квадраты сингулярных чисел двухдиагонального фактора.

    Сингулярные числа двухдиагональной матрицы вычисляются с высокой
    относительной точностью, поэтому θ_1 ~ 1/E T не теряется при больших ν.
    """
    theta = np.sort(svdvals(bidiagonal_factor(branch, nu)) ** 2)

    gaps = np.diff(theta) / theta[1:]
    if theta[0] <= 0 or (gaps.size and gaps.min() <= SEPARATION_RTOL):
        raise NumericError(f"спектр не разделён при ν={nu:g}: {theta}")

    logger.debug("Спектр ветви L={} при ν={:g}: θ_1={:.6g}, θ_L={:.6g}", branch.size, nu, theta[0], theta[-1])
    return Spectrum(eigenvalues=tuple(float(x) for x in theta))


def tridiagonal_spectrum(branch: BDBranch, nu: float) -> np.ndarray:
    """Бисекция по последовательности Штурма для G(ν); точность абсолютная, для сверки при умеренных ν."""
    diagonal, off = symmetrized_generator(branch, nu)
    if branch.size == 1:
        return diagonal
    return eigvalsh_tridiagonal(diagonal, off, lapack_driver="stebz")


def hypoexponential_weights(theta: np.ndarray) -> np.ndarray:
    """Π_{j≠i} θ_j/(θ_j − θ_i)."""
    n = theta.size
    weights = np.ones(n)
    for i in range(n):
        for j in range(n):
            if j != i:
                weights[i] *= theta[j] / (theta[j] - theta[i])
    return weights


def _collides(theta: np.ndarray) -> bool:
    return theta.size > 1 and bool(np.min(np.diff(theta) / theta[1:]) < COLLISION_RTOL)


def escape_law(spectrum: Spectrum, t: float, fallback: tuple[BDBranch, float] | None = None) -> float:
    """P(T_{L,0} > t) для гипоэкспоненциального закона со скоростями θ_i."""
    if t <= 0:
        return 1.0
    theta = np.asarray(spectrum.eigenvalues)
    if _collides(theta):
        if fallback is None:
            raise IllConditioned(f"собственные числа почти совпадают: {theta}")
        logger.warning("Почти кратные собственные числа, используем униформизацию")
        return uniformization_survival(*fallback, t)

    weights = hypoexponential_weights(theta)
    value = math.fsum(float(w * math.exp(-x * t)) for w, x in zip(weights, theta))
    return min(1.0, max(0.0, value))


def absorbing_generator(branch: BDBranch, nu: float) -> np.ndarray:
    """Плотный генератор на уровнях 0..L с поглощением в 0."""
    f = branch.rate(nu)
    L = branch.size
    q = np.zeros((L + 1, L + 1))
    for l in range(1, L + 1):
        q[l, l - 1] = branch.d(l)
        if l < L:
            q[l, l + 1] = branch.a(l) * f
        q[l, l] = -q[l].sum()
    return q


def uniformization_survival(branch: BDBranch, nu: float, t: float, start: int | None = None) -> float:
    start = branch.size if start is None else start
    p = transient_matrix(absorbing_generator(branch, nu), t)
    return float(min(1.0, max(0.0, 1.0 - p[start, 0])))


def escape_moments(spectrum: Spectrum) -> tuple[float, float]:
    return spectrum.mean, spectrum.variance


def gershgorin_constants(branch: BDBranch) -> tuple[float, float, float, float]:
    L = branch.size
    A = branch.d(L)
    B = math.sqrt(branch.d(L) * branch.a(L - 1))
    C = min(branch.birth)
    D = max(
        math.sqrt(branch.d(l + 1) * branch.a(l)) + (math.sqrt(branch.d(l) * branch.a(l - 1)) if l > 1 else 0.0)
        for l in range(1, L)
    )
    return A, B, C, D


def gershgorin_threshold(branch: BDBranch) -> float:
    """Наименьшее ν, выше которого A + B√f < C f − D√f."""
    A, B, C, D = gershgorin_constants(branch)
    root = ((B + D) + math.sqrt((B + D) ** 2 + 4 * A * C)) / (2 * C)
    f_star = root * root
    rate = branch.rate
    return (f_star / float(rate.coefficient)) ** (1 / float(rate.exponent))


def gershgorin_envelope(branch: BDBranch, nu: float) -> tuple[float, float]:
    """(верхняя оценка θ_1, нижняя оценка θ_2..θ_L)."""
    if branch.size == 1:
        return branch.d(1), math.inf

    A, B, C, D = gershgorin_constants(branch)
    sqrt_f = math.sqrt(branch.rate(nu))
    upper = A + B * sqrt_f
    lower = C * sqrt_f * sqrt_f - D * sqrt_f
    if upper >= lower:
        raise DiscsOverlap(nu, gershgorin_threshold(branch))
    return upper, lower
