
import numpy as np

from src.logger import logger

from ..bd import from_component, mean_hitting
from ..errors import LevelOutOfRange
from ..model import check_state, star_chain
from ..schema import NetworkSpec, OccupancyReport, OccupancyTriple, StarState
from . import kernels
from .engine import check_censoring, jump_structure, replication_seeds, set_workers

# запас горизонта за окном, в единицах E T_{(k,l),0}
HORIZON_ESCAPES = 1e4


def occupancy_functionals(
    spec: NetworkSpec,
    nu: float,
    source: StarState,
    t: float,
    replications: int,
    seed: int,
    delta: float | None = None,
    workers: int = 0,
    keep_triples: bool = False,
) -> OccupancyReport:
    """τ, R, τ_res на [0, t] для старта в ветви k = source.branch.

    Полная активность — состояние (k, L_k), выход — корень. Параллельно
    накапливаются T_{(k,l),0} и τ_res[0, ∞]. При заданном delta считается
    доля репликаций с τ[0, t] ≥ (1 − δ)t.
    """
    check_state(spec, source)
    if source.is_root:
        raise LevelOutOfRange("старт должен лежать в ветви, а не в корне")
    if t < 0:
        raise ValueError(f"окно t={t} < 0")

    k = source.branch
    chain = star_chain(spec, nu)
    indptr, indices, cumprob, exit_rates = jump_structure(chain)
    is_full = np.zeros(chain.size, dtype=np.bool_)
    is_full[chain.matching(StarState.at(k, spec.size(k)))] = True
    is_exit = np.zeros(chain.size, dtype=np.bool_)
    is_exit[chain.matching(StarState.root())] = True

    escape_mean = mean_hitting(from_component(spec, k), source.level, 0, nu)
    horizon = t + HORIZON_ESCAPES * escape_mean

    set_workers(workers)
    tau, R, tau_res, T_exit, tau_res_inf, censored = kernels.windowed_occupancy(
        indptr, indices, cumprob, exit_rates, is_full, is_exit,
        chain.representative(source), replication_seeds(seed, replications), t, horizon,
    )
    check_censoring(int(np.count_nonzero(censored)), replications)

    # построчная проверка 0 ≤ τ_res ≤ min(τ, R) ≤ t
    triples = tuple(
        OccupancyTriple(tau=a, R=b, tau_res=c) for a, b, c in zip(tau.tolist(), R.tolist(), tau_res.tolist())
    )

    near = None
    if delta is not None:
        near = float(np.mean(tau >= (1 - delta) * t))

    report = OccupancyReport(
        window=t,
        mean_tau=float(tau.mean()),
        mean_R=float(R.mean()),
        mean_tau_res=float(tau_res.mean()),
        mean_escape=float(T_exit.mean()),
        mean_tau_res_total=float(tau_res_inf.mean()),
        near_saturation=near,
        delta=delta,
        replications=replications,
        seed=seed,
        triples=triples if keep_triples else (),
    )
    logger.info(
        "Занятость ветви {}: t={:.4g}, E τ={:.4g}, E R={:.4g}, E τ_res={:.4g}, E τ_res[0,∞]/E T={:.4f}",
        k, t, report.mean_tau, report.mean_R, report.mean_tau_res,
        report.mean_tau_res_total / report.mean_escape if report.mean_escape > 0 else float("nan"),
    )
    return report


def estimate_near_saturation(
    spec: NetworkSpec,
    nu: float,
    source: StarState,
    omega: float,
    delta: float,
    replications: int,
    seed: int,
    workers: int = 0,
) -> float:
    """P(τ[0, ωE T] ≥ (1 − δ)ωE T), E T = E T_{(k,l),0}."""
    if not 0 < delta < 1:
        raise ValueError(f"δ={delta} вне (0, 1)")
    escape_mean = mean_hitting(from_component(spec, source.branch), source.level, 0, nu)
    report = occupancy_functionals(
        spec, nu, source, omega * escape_mean, replications, seed, delta=delta, workers=workers
    )
    return report.near_saturation
