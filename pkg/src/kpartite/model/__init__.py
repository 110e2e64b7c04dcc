from .chain import Chain
from .full import enumerate_full_space, full_chain, full_rates, stationary_full
from .spec import validate_spec
from .star import check_state, star_chain, star_rates, star_states, stationary_star, tree_mean_hitting
from .transient import transient_distribution, transient_matrix

__all__ = [
    "Chain",
    "check_state",
    "enumerate_full_space",
    "full_chain",
    "full_rates",
    "star_chain",
    "star_rates",
    "star_states",
    "stationary_full",
    "stationary_star",
    "transient_distribution",
    "transient_matrix",
    "tree_mean_hitting",
    "validate_spec",
]
