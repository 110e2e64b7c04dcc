import time
from typing import Literal

import numba
import numpy as np

from src.config import settings
from src.logger import logger

from ..asymptotics import asym_mean_transition, classify
from ..bd import from_component
from ..bd.oracle import exact_mean_hitting_oracle
from ..errors import AggregationInvalid, CensoringOverflow, KPartiteError
from ..model import check_state, full_chain, tree_mean_hitting, validate_spec
from ..model.chain import Chain
from ..schema import BranchClassification, NetworkSpec, SimConfig, SimReport, StarState
from . import kernels

Space = Literal["star", "full"]


# ── Потоки и структура скачков ──────────────────────────────────────────────

def replication_seeds(seed: int, n: int) -> np.ndarray:
    """Слово seed для генератора numba у репликации i: зависит только от (seed, i).

    Ключ берётся из SeedSequence(seed), индекс смешивается с ним обратимым
    32-битным перемешиванием, поэтому у разных репликаций seed всегда разные.
    """
    if n > 2**32:
        raise ValueError(f"не больше 2^32 репликаций, запрошено {n}")
    key = np.random.SeedSequence(seed).generate_state(1, np.uint32)[0]
    x = np.arange(n, dtype=np.uint64).astype(np.uint32) ^ key
    x ^= x >> np.uint32(16)
    x *= np.uint32(0x85EBCA6B)
    x ^= x >> np.uint32(13)
    x *= np.uint32(0xC2B2AE35)
    x ^= x >> np.uint32(16)
    return x


def set_workers(workers: int) -> None:
    if workers > 0:
        numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))


def jump_structure(chain: Chain) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(indptr, indices, cumprob, exit_rates) для ядер."""
    rates = chain.rates.tocsr()
    rates.sort_indices()
    exit_rates = chain.exit_rates
    if np.any(exit_rates <= 0):
        raise ValueError("в цепи есть поглощающие состояния")

    cumprob = np.empty_like(rates.data)
    for i in range(chain.size):
        lo, hi = rates.indptr[i], rates.indptr[i + 1]
        row = np.cumsum(rates.data[lo:hi]) / exit_rates[i]
        row[-1] = 1.0
        cumprob[lo:hi] = row
    return rates.indptr.astype(np.int64), rates.indices.astype(np.int64), cumprob, exit_rates


def check_censoring(censored: int, total: int) -> None:
    if censored > settings.CENSORING_TOLERANCE * total:
        raise CensoringOverflow(censored, total, settings.CENSORING_TOLERANCE)
    if censored:
        logger.warning("Обрезано по горизонту {} из {} репликаций", censored, total)


# ── Горизонт ────────────────────────────────────────────────────────────────

def reference_mean(spec: NetworkSpec, cfg: SimConfig) -> float:
    """Масштаб времени перехода: асимптотика, а если она не определена — точное среднее."""
    source, target = cfg.source, cfg.target
    if isinstance(source, StarState) and isinstance(target, StarState):
        if not source.is_root and not target.is_root:
            try:
                classification = classify(spec, source.branch, source.level, target.branch, target.level)
                return asym_mean_transition(classification, spec)(cfg.nu)
            except KPartiteError as exc:
                logger.debug("Асимптотика недоступна ({}), берём точное среднее", exc)
        if spec.aggregable:
            return tree_mean_hitting(spec, cfg.nu, source, target)

    chain = full_chain(spec, cfg.nu)
    return exact_mean_hitting_oracle(chain, source, [target])


def horizon_for(spec: NetworkSpec, cfg: SimConfig) -> float:
    if cfg.horizon is not None:
        return cfg.horizon
    return settings.HORIZON_FACTOR * max(reference_mean(spec, cfg), 1.0)


# ── Движок на звезде ────────────────────────────────────────────────────────

def star_tables(spec: NetworkSpec, nu: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(birth, death, sizes, f) для ядра: строка k хранит a_l и d_l ветви B_k по уровням l."""
    branches = [from_component(spec, k) for k in range(1, spec.K + 1)]
    width = max(spec.sizes) + 1
    birth = np.zeros((spec.K + 1, width))
    death = np.zeros((spec.K + 1, width))
    for k, branch in enumerate(branches, start=1):
        for l in range(1, branch.size + 1):
            birth[k, l] = branch.a(l)
            death[k, l] = branch.d(l)
    sizes = np.array(spec.sizes, dtype=np.int64)
    f = np.array([spec.rate(k)(nu) for k in range(1, spec.K + 1)])
    return birth, death, sizes, f


def star_passage(
    spec: NetworkSpec, nu: float, source: StarState, target: StarState, n: int, horizon: float, seed: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Переход source → target на звезде, по репликации на поток.

    Визит в ветвь без цели проходится целиком одной точной выборкой времени
    спуска до корня, поэтому стоимость не растёт с ν. Репликация i зависит
    только от (seed, i).
    """
    validate_spec(spec)
    if not spec.aggregable:
        raise AggregationInvalid("звёздный движок требует компонент без внутренних конфликтов и индивидуальных скоростей")

    birth, death, sizes, f = star_tables(spec, nu)
    entry = sizes * f
    entry_cum = np.cumsum(entry) / entry.sum()
    return kernels.star_first_passage(
        birth, death, sizes, f, entry_cum, float(entry.sum()),
        source.branch, source.level, target.branch, target.level,
        replication_seeds(seed, n), horizon,
    )


# ── Публичные операции ──────────────────────────────────────────────────────

def sample_transition(spec: NetworkSpec, cfg: SimConfig, space: Space = "star") -> SimReport:
    """Выборка времён перехода source → target.

    space="star" — агрегированная цепь, space="full" — скачки по независимым
    множествам (ядро numba, поток на репликацию).
    """
    horizon = horizon_for(spec, cfg)
    started = time.perf_counter()
    n = cfg.replications

    if cfg.source == cfg.target:
        times = np.zeros(n)
        occupancy = np.zeros((n, spec.K + 1))
        censored = np.zeros(n, dtype=bool)
    elif space == "star":
        if not (isinstance(cfg.source, StarState) and isinstance(cfg.target, StarState)):
            raise ValueError("на звезде состояния задаются как (k, l)")
        check_state(spec, cfg.source)
        check_state(spec, cfg.target)
        set_workers(cfg.workers)
        times, occupancy, censored = star_passage(spec, cfg.nu, cfg.source, cfg.target, n, horizon, cfg.seed)
    else:
        chain = full_chain(spec, cfg.nu)
        indptr, indices, cumprob, exit_rates = jump_structure(chain)
        is_target = np.zeros(chain.size, dtype=np.bool_)
        is_target[chain.matching(cfg.target)] = True
        set_workers(cfg.workers)
        times, occupancy, censored = kernels.first_passage(
            indptr, indices, cumprob, exit_rates,
            chain.groups, spec.K + 1, is_target,
            chain.representative(cfg.source), replication_seeds(cfg.seed, n), horizon,
        )

    wall = time.perf_counter() - started
    n_censored = int(np.count_nonzero(censored))
    check_censoring(n_censored, n)
    logger.info(
        "Переход {} → {} ({}): ν={:g}, n={}, seed={}, среднее={:.6g}, обрезано {}, {:.2f} с",
        cfg.source, cfg.target, space, cfg.nu, n, cfg.seed, float(times.mean()), n_censored, wall,
    )
    return SimReport(
        samples=tuple(times.tolist()),
        occupancy=tuple(tuple(row) for row in occupancy[:, 1:].tolist()),
        censored=n_censored,
        horizon=horizon,
        seed=cfg.seed,
        wall_seconds=wall,
    )


def branch_occupancy_fractions(report: SimReport, classification: BranchClassification) -> dict[int, float]:
    """Доля времени перехода в ветви k ≠ k2: E[время в B_k] / E[T]."""
    times = np.asarray(report.samples)
    occupancy = np.asarray(report.occupancy)
    total = times.sum()
    K = occupancy.shape[1]
    return {
        k: float(occupancy[:, k - 1].sum() / total) if total > 0 else 0.0
        for k in range(1, K + 1)
        if k != classification.k2
    }
