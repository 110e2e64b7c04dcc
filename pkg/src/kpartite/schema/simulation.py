from pydantic import BaseModel, ConfigDict, Field, model_validator

from .network import FullState, StarState


class SimConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    nu: float = Field(..., gt=0, description="Параметр ν")
    replications: int = Field(..., ge=1)
    seed: int = Field(0, ge=0, lt=2**64, description="Корневой seed")
    source: StarState | FullState
    target: StarState | FullState
    horizon: float | None = Field(None, gt=0, description="Обрезка по времени; None — HORIZON_FACTOR × асимптотика")
    allow_same: bool = Field(False, description="Разрешить source == target (все выборки нулевые)")
    workers: int = Field(0, ge=0, description="Потоки numba, 0 — все ядра")

    @model_validator(mode="after")
    def _check(self) -> "SimConfig":
        # на Ω* цель (k, l) означает любое независимое множество с l активными в компоненте k
        if self.source == self.target and not self.allow_same:
            raise ValueError("source совпадает с target")
        return self


class SimReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    samples: tuple[float, ...] = Field(..., description="Времена перехода")
    occupancy: tuple[tuple[float, ...], ...] = Field(
        ..., description="Время в каждой ветви 1..K за переход, по репликациям"
    )
    censored: int = Field(0, ge=0, description="Репликации, упёршиеся в горизонт")
    horizon: float
    seed: int
    wall_seconds: float = Field(0.0, description="Диагностика, не пишется в детерминированный отчёт")

    @model_validator(mode="after")
    def _check(self) -> "SimReport":
        if any(x < 0 for x in self.samples):
            raise ValueError("отрицательное время перехода")
        return self

    @property
    def replications(self) -> int:
        return len(self.samples)


class OccupancyTriple(BaseModel):
    """τ, R и τ_res на окне [0, t] для одной репликации."""

    model_config = ConfigDict(frozen=True)

    tau: float = Field(..., ge=0, description="Время в полностью активном состоянии (k, L_k)")
    R: float = Field(..., ge=0, description="min(t, T_{(k,l),0})")
    tau_res: float = Field(..., ge=0, description="Полная активность до выхода из ветви")

    @model_validator(mode="after")
    def _ordering(self) -> "OccupancyTriple":
        # 0 ≤ τ_res ≤ min(τ, R); допуск на округление суммы
        slack = 1e-9 * max(1.0, self.R)
        if self.tau_res > min(self.tau, self.R) + slack:
            raise ValueError(f"τ_res={self.tau_res} > min(τ={self.tau}, R={self.R})")
        return self


class OccupancyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    window: float
    mean_tau: float
    mean_R: float
    mean_tau_res: float
    mean_escape: float = Field(..., description="Среднее T_{(k,l),0} по выборке")
    mean_tau_res_total: float = Field(..., description="Среднее τ_res[0, ∞]")
    near_saturation: float | None = Field(None, description="P(τ[0, t] ≥ (1−δ)t)")
    delta: float | None = None
    replications: int
    seed: int
    triples: tuple[OccupancyTriple, ...] = ()


class StarvationEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    probability: float = Field(..., ge=0, le=1, description="Доля репликаций с τ_{k2}(t) = 0")
    ci_low: float
    ci_high: float
    replications: int
    seed: int


class GeometricSumCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    branch: int
    nu: tuple[float, ...]
    ks: tuple[float, ...] = Field(..., description="KS против Exp(1) для каждого ν")
    mean_visits: tuple[float, ...] = Field(..., description="E N_k при каждом ν")
    variance_ratio: tuple[float, ...] = Field(..., description="Var/E² времени спуска L → 0 по спектру при каждом ν")
    monotone: bool = Field(..., description="KS не возрастает вдоль сетки ν")
    draws: int
    seed: int
