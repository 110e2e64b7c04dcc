from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from .network import Component, NetworkSpec, PowerLawRate, Rational, StarState


class RateConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    exponent: Rational
    coefficient: Rational = Fraction(1)


class ComponentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    size: int = Field(..., description="L_k")
    exponent: Rational = Field(..., description='a_k, например "5/3"')
    coefficient: Rational = Field(Fraction(1), description="c_k")
    intra_edges: list[tuple[int, int]] = Field(default_factory=list, description="Пары пользователей с нуля")
    user_rates: list[RateConfig] | None = None

    def to_component(self) -> Component:
        user_rates = None
        if self.user_rates is not None:
            user_rates = tuple(PowerLawRate(coefficient=r.coefficient, exponent=r.exponent) for r in self.user_rates)
        return Component(
            size=self.size,
            rate=PowerLawRate(coefficient=self.coefficient, exponent=self.exponent),
            intra_edges=tuple(tuple(e) for e in self.intra_edges),
            user_rates=user_rates,
        )


class RunConfig(BaseModel):
    """Фронтматтер файла конфигурации. Неизвестные ключи — ошибка."""

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    components: list[ComponentConfig] = Field(..., min_length=1)
    source: tuple[int, int] = Field(..., description="(k1, l1)")
    target: tuple[int, int] = Field(..., description="(k2, l2)")
    nu: float = Field(150.0, gt=0)
    replications: int = Field(20000, ge=1)
    seed: int = Field(0, ge=0)
    workers: int = Field(0, ge=0)
    horizon: float | None = Field(None, gt=0)
    space: Literal["star", "full"] = "star"

    # mix
    r: float = Field(0.5, gt=0, lt=1)
    epsilon: float = Field(0.1, gt=0)
    nu_grid: list[float] = Field(default_factory=list, description="Сетка ν для mix")
    exact_tmix: bool = False

    # starve / occupancy
    omega: list[float] = Field(default_factory=lambda: [0.25, 0.5, 1.0, 2.0])
    delta: float = Field(0.1, gt=0, lt=1)

    description: str = Field("", description="Тело markdown-документа, только для эха")

    def to_spec(self) -> NetworkSpec:
        return NetworkSpec(components=tuple(c.to_component() for c in self.components))

    @property
    def source_state(self) -> StarState:
        return StarState.at(*self.source)

    @property
    def target_state(self) -> StarState:
        return StarState.at(*self.target)


class ResultEnvelope(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: str
    tool_version: str
    seed: int
    config: dict[str, Any] = Field(..., description="Эхо конфигурации для точного перезапуска")
    outputs: dict[str, Any]
    warnings: list[str] = Field(default_factory=list)
