"""Иерархия ошибок пакета. Семейство ошибки определяет код выхода CLI."""


class KPartiteError(Exception):
    exit_code = 1


# ── Ошибки конфигурации (код 2) ─────────────────────────────────────────────

class ConfigError(KPartiteError):
    exit_code = 2


class EmptyComponent(ConfigError):
    pass


class NonMinimalComponent(ConfigError):
    def __init__(self, component: int, left: tuple[int, ...], right: tuple[int, ...]):
        self.component = component
        self.left = left
        self.right = right
        super().__init__(
            f"Компонента {component} не минимальна: {set(left)} и {set(right)} полностью мешают друг другу"
        )


class AggregationInvalid(ConfigError):
    pass


class TooLarge(ConfigError):
    def __init__(self, what: str, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"{what}: {count} > {limit}")


class LevelOutOfRange(ConfigError):
    pass


class NotPowerLaw(ConfigError):
    pass


class SameBranch(ConfigError):
    pass


class WrongScenario(ConfigError):
    pass


class EmptySubset(ConfigError):
    pass


class FullSubset(ConfigError):
    pass


class NoEligibleBranch(ConfigError):
    pass


class BadEpsilon(ConfigError):
    pass


class Unreachable(ConfigError):
    pass


# ── Численные ошибки (код 3) ────────────────────────────────────────────────

class NumericError(KPartiteError):
    exit_code = 3


class IllConditioned(NumericError):
    pass


class DiscsOverlap(NumericError):
    def __init__(self, nu: float, threshold: float):
        self.nu = nu
        self.threshold = threshold
        super().__init__(f"Круги Гершгорина пересекаются при ν={nu:g}; нужно ν > {threshold:.6g}")


class Singular(NumericError):
    pass


class InversionUnstable(NumericError):
    def __init__(self, x_min: float, x_max: float, detail: str = ""):
        self.x_min = x_min
        self.x_max = x_max
        super().__init__(f"Обращение Лапласа неустойчиво на x ∈ [{x_min:g}, {x_max:g}] {detail}".strip())


class NonConvergent(NumericError):
    pass


# ── Обрезка по горизонту (код 4) ────────────────────────────────────────────

class CensoringOverflow(KPartiteError):
    exit_code = 4

    def __init__(self, censored: int, total: int, tolerance: float):
        self.censored = censored
        self.total = total
        super().__init__(
            f"Обрезано {censored} из {total} репликаций (> {tolerance:.2%}); увеличьте горизонт"
        )
