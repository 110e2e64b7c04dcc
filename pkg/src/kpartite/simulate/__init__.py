from .engine import branch_occupancy_fractions, horizon_for, replication_seeds, sample_transition, star_passage
from .geometric import geometric_sum_limit_check
from .occupancy import estimate_near_saturation, occupancy_functionals
from .starvation import estimate_starvation
from .stats import histogram, ks_statistic, wilson_interval

__all__ = [
    "branch_occupancy_fractions",
    "estimate_near_saturation",
    "estimate_starvation",
    "geometric_sum_limit_check",
    "histogram",
    "horizon_for",
    "ks_statistic",
    "occupancy_functionals",
    "replication_seeds",
    "sample_transition",
    "star_passage",
    "wilson_interval",
]
