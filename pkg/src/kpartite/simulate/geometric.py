from collections.abc import Sequence

import numpy as np
from scipy.stats import expon

from src.logger import logger

from ..bd import escape_moments, escape_spectrum, from_component, mean_hitting, sample_escape
from ..errors import WrongScenario
from ..schema import BranchClassification, GeometricSumCheck, NetworkSpec
from .stats import ks_statistic


def geometric_sum_limit_check(
    nu_grid: Sequence[float],
    spec: NetworkSpec,
    classification: BranchClassification,
    k: int,
    seed: int,
    draws: int = 100_000,
) -> GeometricSumCheck:
    """Сумма S(ν) времён N_k визитов в сильно притягивающую ветвь k, нормированная средним, против Exp(1).

    Из корня процесс уходит в ветвь j с вероятностью L_j f_j / Σ L_i f_i, поэтому
    число визитов в k до первого входа в k2 геометрическое с E N_k = p_k / p_{k2}.
    Каждый визит начинается с уровня 1.
    """
    if k not in classification.partition_S:
        raise WrongScenario(
            f"ветвь {k} не сильно притягивающая (S = {classification.partition_S}, сценарий {classification.scenario})"
        )

    k2 = classification.k2
    branch = from_component(spec, k)
    streams = np.random.SeedSequence(seed).spawn(len(nu_grid))
    ks_values, visits, ratios = [], [], []

    for nu, stream in zip(nu_grid, streams):
        rng = np.random.Generator(np.random.Philox(stream))
        to_k = spec.size(k) * spec.rate(k)(nu)
        to_k2 = spec.size(k2) * spec.rate(k2)(nu)
        stay = to_k / (to_k + to_k2)

        # число неудач до первого успеха: N_k ∈ {0, 1, ...}
        copies = rng.geometric(1 - stay, draws) - 1
        total = sample_escape(branch, nu, 1, draws, rng, copies=copies)
        mean = stay / (1 - stay) * mean_hitting(branch, 1, 0, nu)

        ks = ks_statistic(total / mean, expon.cdf)
        ks_values.append(ks)
        visits.append(stay / (1 - stay))
        # Var/E² спуска L → 0 по спектру; сходимость суммы к Exp(1) требует Var/E² → 1
        escape_mean, escape_variance = escape_moments(escape_spectrum(branch, nu))
        ratios.append(escape_variance / escape_mean**2)
        logger.info("Геометрическая сумма, ветвь {}: ν={:g}, E N={:.4g}, KS={:.5f}", k, nu, visits[-1], ks)

    monotone = all(b <= a for a, b in zip(ks_values, ks_values[1:]))
    if not monotone:
        logger.warning("KS не убывает по сетке ν: {}", ks_values)

    return GeometricSumCheck(
        branch=k,
        nu=tuple(float(nu) for nu in nu_grid),
        ks=tuple(ks_values),
        mean_visits=tuple(visits),
        variance_ratio=tuple(ratios),
        monotone=monotone,
        draws=draws,
        seed=seed,
    )
