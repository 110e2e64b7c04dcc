from .branch import (
    asym_mean_hitting,
    from_component,
    log_level_weights,
    mean_fall_time,
    mean_hitting,
    potential_coeffs,
)
from .oracle import branch_chain, branch_mean_oracle, exact_mean_hitting_oracle
from .sampling import sample_escape
from .spectrum import (
    escape_law,
    escape_moments,
    escape_spectrum,
    gershgorin_constants,
    gershgorin_envelope,
    gershgorin_threshold,
    symmetrized_generator,
    tridiagonal_spectrum,
    uniformization_survival,
)

__all__ = [
    "asym_mean_hitting",
    "branch_chain",
    "branch_mean_oracle",
    "escape_law",
    "escape_moments",
    "escape_spectrum",
    "exact_mean_hitting_oracle",
    "from_component",
    "gershgorin_constants",
    "gershgorin_envelope",
    "gershgorin_threshold",
    "log_level_weights",
    "mean_fall_time",
    "mean_hitting",
    "potential_coeffs",
    "sample_escape",
    "symmetrized_generator",
    "tridiagonal_spectrum",
    "uniformization_survival",
]
