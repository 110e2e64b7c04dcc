from .classify import asym_mean_transition, classify, homogeneous_alpha
from .extension import extension_constants
from .law import (
    CLOSED_ROWS,
    NUMERICAL_ROWS,
    atom_floor,
    laplace,
    law_cdf,
    law_cdf_array,
    law_mean,
    law_pdf,
    law_pdf_array,
    law_quantile,
    limit_law,
)
from .marked import marked_poisson_check, sample_marked_poisson, w_law

__all__ = [
    "CLOSED_ROWS",
    "NUMERICAL_ROWS",
    "asym_mean_transition",
    "atom_floor",
    "classify",
    "extension_constants",
    "homogeneous_alpha",
    "laplace",
    "law_cdf",
    "law_cdf_array",
    "law_mean",
    "law_pdf",
    "law_pdf_array",
    "law_quantile",
    "limit_law",
    "marked_poisson_check",
    "sample_marked_poisson",
    "w_law",
]
