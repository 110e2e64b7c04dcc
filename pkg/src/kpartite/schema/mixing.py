from pydantic import BaseModel, ConfigDict, Field

from .network import Rational


class ConductanceReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    subset: str = Field(..., description="Описание подмножества S")
    flow: float = Field(..., ge=0, description="Q(S, S^c)")
    mass: float = Field(..., ge=0, le=1, description="π_S")
    log_mass: float = Field(..., le=0, description="log π_S, точный и там, где π_S округляется до 0 или 1")
    conductance: float = Field(..., ge=0, description="Φ(S) = Q/π_S")
    asymptotic_coefficient: Rational | None = Field(None, description="Для ветви: L_k c_k^{1−L_k}")
    asymptotic_exponent: Rational | None = Field(None, description="Для ветви: −a_k(L_k−1)")


class MixingBound(BaseModel):
    model_config = ConfigDict(frozen=True)

    nu: float
    r: float = Field(..., gt=0, lt=1)
    epsilon: float = Field(..., gt=0)
    kappa: int
    conductance: float = Field(..., description="Φ(B_κ) при данном ν")
    bound: float = Field(..., description="(1 − r − 2ε)/Φ(B_κ)")
    asymptotic_bound: float = Field(..., description="(1 − r − 2ε)·f_κ^{L_κ−1}/L_κ")
    label: str = "branch-certified"
    t_mix: float | None = Field(None, description="Точное t_mix(ε, ν), если считалось")
