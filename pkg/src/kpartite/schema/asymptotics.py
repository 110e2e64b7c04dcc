import math
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .network import Rational

SCENARIOS = ("1a", "1b", "1b*", "1c", "1d", "2a", "2b", "2b*", "2b**", "2b***", "2c", "2c*", "2d", "3")


class AsymptoticMean(BaseModel):
    """E T ~ coefficient · ν^exponent."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficient: Rational = Field(..., description="Положительный коэффициент")
    exponent: Rational = Field(..., description="Рациональный показатель (для средних времён ≥ 0)")

    @field_validator("coefficient")
    @classmethod
    def _positive(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError(f"коэффициент должен быть положительным: {value}")
        return value

    def __call__(self, nu: float) -> float:
        return math.exp(math.log(self.coefficient) + float(self.exponent) * math.log(nu))

    def __add__(self, other: "AsymptoticMean") -> "AsymptoticMean":
        # сумма двух степенных слагаемых: доминирующее выигрывает, при равенстве коэффициенты складываются
        if self.exponent == other.exponent:
            return AsymptoticMean(coefficient=self.coefficient + other.coefficient, exponent=self.exponent)
        return self if self.exponent > other.exponent else other


class BranchClassification(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k1: int
    l1: int
    k2: int
    l2: int
    gamma: dict[int, Rational] = Field(..., description="γ_k для k ≠ k2")
    beta: dict[int, Rational | None] = Field(..., description="β_k для k ∈ K_*; None означает ∞")
    alpha: Rational = Field(..., description="Вес времени выхода из начальной ветви")
    K_star: tuple[int, ...] = Field(..., description="Доминирующие ветви")
    partition_N: tuple[int, ...]
    partition_A: tuple[int, ...]
    partition_S: tuple[int, ...]
    scenario: str = Field(..., description="Метка сценария из таблицы предельных законов")
    aliases: tuple[str, ...] = Field((), description="Общие метки, уточнённые звёздной")
    term_A: AsymptoticMean = Field(..., description="E A — выход из ветви k1")
    term_B: AsymptoticMean = Field(..., description="E B — визиты в доминирующие ветви")

    @property
    def gamma_N(self) -> Fraction:
        return sum((self.gamma[k] for k in self.partition_N), Fraction(0))

    @property
    def gamma_A(self) -> Fraction:
        return sum((self.gamma[k] for k in self.partition_A), Fraction(0))

    @property
    def gamma_S(self) -> Fraction:
        return sum((self.gamma[k] for k in self.partition_S), Fraction(0))

    @property
    def beta_A(self) -> Fraction:
        return sum((self.beta[k] for k in self.partition_A), Fraction(0))

    def beta_value(self, k: int) -> float:
        value = self.beta[k]
        return math.inf if value is None else float(value)


class LimitLaw(BaseModel):
    """Закон Z = αY + (1−α)W."""

    model_config = ConfigDict(frozen=True)

    scenario: str
    alpha: float = Field(..., ge=0, le=1)
    atom: float = Field(..., ge=0, le=1, description="P(Z = 0)")
    attracting: tuple[tuple[float, float], ...] = Field((), description="(γ_k, β_k) для k ∈ A")
    gamma_S: float = 0.0
    gamma_N: float = 0.0
    mean: float = Field(..., description="α + (1−α)(1−γ_N)")

    @property
    def beta_A(self) -> float:
        return math.fsum(beta for _, beta in self.attracting)

    @property
    def gamma_A(self) -> float:
        return math.fsum(gamma for gamma, _ in self.attracting)


class ExtensionConstants(BaseModel):
    """Константы g, ψ, η для компоненты с внутренними конфликтами."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    g: AsymptoticMean = Field(..., description="max Π f_l(ν)^{u_l} по независимым множествам")
    psi: Rational = Field(..., description="lim Z_k(ν)/g_k(ν)")
    eta: Rational = Field(..., description="min a_l")
    total_rate: AsymptoticMean = Field(..., description="Главный член F_k(ν) = Σ f_l(ν)")
    maximizers: tuple[tuple[int, ...], ...] = Field(..., description="Независимые множества, на которых достигается g")

    def escape_mean(self) -> AsymptoticMean:
        """E T_{z,0} ~ ψ g(ν) / F(ν)."""
        return AsymptoticMean(
            coefficient=self.psi * self.g.coefficient / self.total_rate.coefficient,
            exponent=self.g.exponent - self.total_rate.exponent,
        )
