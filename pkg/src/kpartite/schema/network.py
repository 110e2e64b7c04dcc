import math
from fractions import Fraction
from typing import Annotated

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, field_validator


def to_fraction(value) -> Fraction:
    """Принимает int, Fraction, строку "p/q" или "0.75"; float переводится через str, чтобы 0.1 стало 1/10."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("ожидалось число, а не bool")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"ожидалось конечное число: {value}")
        return Fraction(str(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"не удалось прочитать рациональное число: {value!r}")


def fraction_to_str(value: Fraction) -> str:
    return str(value)


Rational = Annotated[Fraction, BeforeValidator(to_fraction), PlainSerializer(fraction_to_str, return_type=str)]


class PowerLawRate(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficient: Rational = Field(Fraction(1), description="Коэффициент c_k > 0 в f_k(ν) = c_k·ν^{a_k}")
    exponent: Rational = Field(..., description="Точный рациональный показатель a_k > 0")

    @field_validator("coefficient", "exponent")
    @classmethod
    def _positive(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError(f"ожидалось положительное значение, получено {value}")
        return value

    def log_value(self, nu: float) -> float:
        return math.log(self.coefficient) + float(self.exponent) * math.log(nu)

    def __call__(self, nu: float) -> float:
        return math.exp(self.log_value(nu))

    def power(self, n: int) -> tuple[Fraction, Fraction]:
        """(коэффициент, показатель) для f(ν)^n."""
        return self.coefficient ** n, self.exponent * n


class Component(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    size: int = Field(..., description="Число пользователей L_k")
    rate: PowerLawRate = Field(..., description="Общая скорость активации пользователей компоненты")
    intra_edges: tuple[tuple[int, int], ...] = Field(
        (), description="Конфликты внутри компоненты, индексы пользователей с нуля"
    )
    user_rates: tuple[PowerLawRate, ...] | None = Field(
        None, description="Индивидуальные скорости пользователей (только вместе с intra_edges)"
    )

    def user_rate(self, user: int) -> PowerLawRate:
        if self.user_rates is None:
            return self.rate
        return self.user_rates[user]


class NetworkSpec(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    components: tuple[Component, ...] = Field(..., description="Компоненты в порядке k = 1..K")

    @property
    def K(self) -> int:
        return len(self.components)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.components)

    @property
    def total_users(self) -> int:
        return sum(self.sizes)

    @property
    def has_intra_edges(self) -> bool:
        return any(c.intra_edges for c in self.components)

    @property
    def aggregable(self) -> bool:
        """Звезда точна, только если у всех пользователей компоненты одна скорость и нет внутренних конфликтов."""
        return not any(c.intra_edges or c.user_rates is not None for c in self.components)

    def component(self, k: int) -> Component:
        """Компонента по номеру k (с единицы)."""
        return self.components[k - 1]

    def rate(self, k: int) -> PowerLawRate:
        return self.components[k - 1].rate

    def size(self, k: int) -> int:
        return self.components[k - 1].size

    @classmethod
    def power_law(cls, sizes, exponents, coefficients=None) -> "NetworkSpec":
        """Удобный конструктор: L=(...), a=(...), c=(...) по умолчанию единицы."""
        coefficients = coefficients or [1] * len(sizes)
        return cls(components=tuple(
            Component(size=L, rate=PowerLawRate(coefficient=c, exponent=a))
            for L, a, c in zip(sizes, exponents, coefficients, strict=True)
        ))


class StarState(BaseModel):
    """Состояние агрегированной цепи: корень 0 или (k, l)."""

    model_config = ConfigDict(frozen=True)

    branch: int = Field(0, description="Номер ветви k (0 — корень)")
    level: int = Field(0, description="Число активных пользователей l")

    @classmethod
    def root(cls) -> "StarState":
        return cls(branch=0, level=0)

    @classmethod
    def at(cls, k: int, l: int) -> "StarState":
        return cls(branch=k, level=l)

    @property
    def is_root(self) -> bool:
        return self.branch == 0

    def __str__(self) -> str:
        return "0" if self.is_root else f"({self.branch},{self.level})"


class FullState(BaseModel):
    """Независимое множество как битовая маска по глобальным номерам пользователей."""

    model_config = ConfigDict(frozen=True)

    mask: int = Field(0, ge=0)

    @property
    def users(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.mask.bit_length()) if self.mask >> i & 1)

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.users)) + "}"
