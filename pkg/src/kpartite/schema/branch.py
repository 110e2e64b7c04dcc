import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .network import PowerLawRate


class BDBranch(BaseModel):
    """Процесс рождения и гибели на уровнях 1..L с поглощением в 0.

    Рождение с уровня l идёт со скоростью a_l·f(ν), гибель — со скоростью d_l.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    size: int = Field(..., ge=1, description="Число уровней L")
    birth: tuple[float, ...] = Field(..., description="a_1..a_{L-1}")
    death: tuple[float, ...] = Field(..., description="d_1..d_L")
    rate: PowerLawRate = Field(..., description="f(ν), множитель при рождениях")

    @model_validator(mode="after")
    def _check(self) -> "BDBranch":
        if len(self.birth) != self.size - 1 or len(self.death) != self.size:
            raise ValueError(
                f"для L={self.size} нужно {self.size - 1} коэффициентов рождения и {self.size} гибели"
            )
        if any(not (x > 0 and math.isfinite(x)) for x in (*self.birth, *self.death)):
            raise ValueError("все коэффициенты должны быть положительны")
        return self

    @classmethod
    def standard(cls, size: int, rate: PowerLawRate) -> "BDBranch":
        return cls(
            size=size,
            birth=tuple(float(size - l) for l in range(1, size)),
            death=tuple(float(l) for l in range(1, size + 1)),
            rate=rate,
        )

    @classmethod
    def drain(cls, servers: int) -> "BDBranch":
        """M/M/c: a_n = 1, d_n = n, f(ν) = ν."""
        return cls(
            size=servers,
            birth=(1.0,) * (servers - 1),
            death=tuple(float(n) for n in range(1, servers + 1)),
            rate=PowerLawRate(coefficient=1, exponent=1),
        )

    def a(self, l: int) -> float:
        return self.birth[l - 1] if l < self.size else 0.0

    def d(self, l: int) -> float:
        return self.death[l - 1]


class PotentialCoeffs(BaseModel):
    model_config = ConfigDict(frozen=True)

    log_xi: tuple[float, ...] = Field(..., description="log ξ_L, log ξ_{L-1}, ..., log ξ_1 (ξ_L = 1)")

    @property
    def xi(self) -> tuple[float, ...]:
        return tuple(math.exp(v) for v in self.log_xi)


class Spectrum(BaseModel):
    model_config = ConfigDict(frozen=True)

    eigenvalues: tuple[float, ...] = Field(..., description="θ_1 < θ_2 < ... < θ_L собственные числа −T(ν)")

    @model_validator(mode="after")
    def _check(self) -> "Spectrum":
        if not self.eigenvalues or self.eigenvalues[0] <= 0:
            raise ValueError("спектр должен быть непустым и положительным")
        if any(b <= a for a, b in zip(self.eigenvalues, self.eigenvalues[1:])):
            raise ValueError("собственные числа должны строго возрастать")
        return self

    @property
    def mean(self) -> float:
        return math.fsum(1.0 / theta for theta in self.eigenvalues)

    @property
    def variance(self) -> float:
        return math.fsum(1.0 / theta**2 for theta in self.eigenvalues)
