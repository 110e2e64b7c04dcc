
import numpy as np

from src.logger import logger

from ..errors import LevelOutOfRange
from ..model import check_state, validate_spec
from ..schema import NetworkSpec, StarState, StarvationEstimate
from .engine import star_passage
from .stats import wilson_interval


def estimate_starvation(
    spec: NetworkSpec,
    nu: float,
    k2: int,
    t: float,
    replications: int,
    seed: int,
    source: StarState,
) -> StarvationEstimate:
    """Доля репликаций, в которых процесс из source не входит в B_{k2} до момента t.

    Вход в B_{k2} — это попадание в (k2, 1), поэтому τ_{k2}(t) = 0 ровно тогда,
    когда T_{source,(k2,1)} ≥ t: переход моделируется с горизонтом t, и
    обрезанные репликации и есть голодающие.
    """
    validate_spec(spec)
    check_state(spec, source)
    if source.is_root or source.branch == k2:
        raise LevelOutOfRange(f"старт {source} должен лежать в ветви, отличной от {k2}")
    if t < 0:
        raise ValueError(f"t={t} < 0")

    if t == 0:
        starved = replications
    else:
        _, _, censored = star_passage(spec, nu, source, StarState.at(k2, 1), replications, t, seed)
        starved = int(np.count_nonzero(censored))

    low, high = wilson_interval(starved, replications)
    estimate = StarvationEstimate(
        t=t,
        probability=starved / replications,
        ci_low=low,
        ci_high=high,
        replications=replications,
        seed=seed,
    )
    logger.info("Голодание ветви {} до t={:.4g}: {:.4f} [{:.4f}, {:.4f}]", k2, t, estimate.probability, low, high)
    return estimate
