from .conductance import (
    branch_conductance_asymptotic,
    branch_subset,
    conductance,
    kappa_branch,
    limiting_branch_masses,
)
from .tv import mixing_lower_bound, t_mix_exact, tv_distance

__all__ = [
    "branch_conductance_asymptotic",
    "branch_subset",
    "conductance",
    "kappa_branch",
    "limiting_branch_masses",
    "mixing_lower_bound",
    "t_mix_exact",
    "tv_distance",
]
