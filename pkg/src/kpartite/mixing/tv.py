
import numpy as np

from src.config import settings
from src.logger import logger

from ..errors import BadEpsilon, NonConvergent, TooLarge
from ..model import star_chain, transient_matrix
from ..schema import MixingBound, NetworkSpec
from .conductance import branch_subset, conductance, kappa_branch

MAX_DOUBLINGS = 200


def _distance(generator: np.ndarray, pi: np.ndarray, t: float) -> float:
    P = transient_matrix(generator, t)
    return float(0.5 * np.abs(P - pi[None, :]).sum(axis=1).max())


def _prepare(spec: NetworkSpec, nu: float) -> tuple[np.ndarray, np.ndarray]:
    chain = star_chain(spec, nu)
    if chain.size > settings.TV_STATE_LIMIT:
        raise TooLarge("состояний для точного TV", chain.size, settings.TV_STATE_LIMIT)
    return chain.dense_generator(), chain.stationary()


def tv_distance(spec: NetworkSpec, nu: float, t: float) -> float:
    """d(t, ν) = max_x ‖P^t(x, ·) − π‖_TV."""
    if t < 0:
        raise ValueError(f"t={t} < 0")
    generator, pi = _prepare(spec, nu)
    return _distance(generator, pi, t)


def t_mix_exact(spec: NetworkSpec, nu: float, epsilon: float) -> float:
    """inf{t : d(t, ν) ≤ ε}: удвоение до вилки, затем бисекция до TMIX_RTOL."""
    generator, pi = _prepare(spec, nu)
    if _distance(generator, pi, 0.0) <= epsilon:
        return 0.0

    lo, hi = 0.0, 1.0 / float(np.max(-np.diag(generator)))
    for _ in range(MAX_DOUBLINGS):
        if _distance(generator, pi, hi) <= epsilon:
            break
        lo, hi = hi, 2 * hi
    else:
        raise NonConvergent(f"не найдена вилка для t_mix(ε={epsilon}) при ν={nu:g}: d({hi:.4g}) > ε")

    while hi - lo > settings.TMIX_RTOL * hi:
        mid = 0.5 * (lo + hi)
        if _distance(generator, pi, mid) <= epsilon:
            hi = mid
        else:
            lo = mid

    logger.debug("t_mix(ε={:g}, ν={:g}) = {:.8g}", epsilon, nu, hi)
    return hi


def mixing_lower_bound(spec: NetworkSpec, nu: float, r: float, epsilon: float, exact: bool = False) -> MixingBound:
    """(1 − r − 2ε)/Φ(B_κ): Φ_r ≤ Φ(B_κ), поэтому оценка остаётся нижней."""
    if not 0 < r < 1:
        raise BadEpsilon(f"r={r} вне (0, 1)")
    if not 0 < epsilon < (1 - r) / 2:
        raise BadEpsilon(f"ε={epsilon} вне (0, (1 − r)/2) = (0, {(1 - r) / 2:g})")

    kappa = kappa_branch(spec, r)
    report = conductance(spec, nu, branch_subset(spec, kappa))
    constant = 1 - r - 2 * epsilon
    rate, L = spec.rate(kappa), spec.size(kappa)

    bound = MixingBound(
        nu=nu,
        r=r,
        epsilon=epsilon,
        kappa=kappa,
        conductance=report.conductance,
        bound=constant / report.conductance,
        asymptotic_bound=constant * rate(nu) ** (L - 1) / L,
        t_mix=t_mix_exact(spec, nu, epsilon) if exact else None,
    )
    if bound.t_mix is not None and bound.bound > bound.t_mix:
        logger.warning("Нижняя оценка {:.6g} больше точного t_mix {:.6g} при ν={:g}", bound.bound, bound.t_mix, nu)
    logger.info("Оценка смешивания: ν={:g}, κ={}, Φ={:.6g}, оценка={:.6g}", nu, kappa, report.conductance, bound.bound)
    return bound
