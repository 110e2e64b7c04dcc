
import numpy as np

from src.logger import logger

from ..errors import WrongScenario
from ..schema import LimitLaw
from ..simulate.stats import ks_statistic
from .law import law_cdf_array


def w_law(law: LimitLaw) -> LimitLaw:
    """Закон W (α = 0) с теми же A и S."""
    if not law.attracting or law.gamma_S <= 0:
        raise WrongScenario(f"нужны непустые A и S, сценарий {law.scenario}")
    return law.model_copy(update={"alpha": 0.0, "atom": 0.0, "scenario": "1d", "mean": 1 - law.gamma_N})


def sample_marked_poisson(law: LimitLaw, size: int, rng: np.random.Generator) -> np.ndarray:
    """W = T + W(T): T ~ Exp(среднее γ_S), метки H на пуассоновском потоке интенсивности β_A/γ_S.

    H гиперэкспоненциальна: ветвь k с вероятностью β_k/β_A, скорость β_k/γ_k.
    """
    w_law(law)
    gammas = np.array([g for g, _ in law.attracting])
    betas = np.array([b for _, b in law.attracting])
    beta_A = betas.sum()

    T = rng.exponential(law.gamma_S, size)
    marks = rng.poisson(beta_A / law.gamma_S * T)
    per_branch = rng.multinomial(marks, betas / beta_A)

    total = T.copy()
    for k in range(betas.size):
        counts = per_branch[:, k]
        active = counts > 0
        if active.any():
            total[active] += rng.gamma(counts[active], gammas[k] / betas[k])
    return total


def marked_poisson_check(law: LimitLaw, samples: int, seed: int) -> float:
    target = w_law(law)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    draws = sample_marked_poisson(law, samples, rng)
    ks = ks_statistic(draws, lambda xs: law_cdf_array(target, xs))
    logger.info("Маркированный пуассоновский поток: n={}, среднее={:.5f}, KS={:.5f}", samples, draws.mean(), ks)
    return ks
