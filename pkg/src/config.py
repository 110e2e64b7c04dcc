from pydantic_settings import BaseSettings, SettingsConfigDict
from pathlib import Path

BASE_DIR = Path(__file__).parent.parent


class Settings(BaseSettings):
    # Логи
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = f"{BASE_DIR}/logs"

    # ---------------------------------------------------------------------------
    # Симуляция
    # ---------------------------------------------------------------------------
    # DEFAULT_WORKERS = 0: использовать все ядра (numba.config.NUMBA_NUM_THREADS)
    # Число потоков не влияет на результат: у каждой репликации свой seed.
    DEFAULT_SEED: int = 0
    DEFAULT_WORKERS: int = 0
    DEFAULT_REPLICATIONS: int = 20000
    DEFAULT_NU: float = 150.0

    # Горизонт = HORIZON_FACTOR × асимптотическое среднее.
    # Доля обрезанных репликаций выше CENSORING_TOLERANCE считается ошибкой прогона.
    HORIZON_FACTOR: float = 1e4
    CENSORING_TOLERANCE: float = 1e-3

    # ---------------------------------------------------------------------------
    # Численные методы
    # ---------------------------------------------------------------------------
    # Обращение Лапласа (Talbot) и точность mpmath
    TALBOT_DEGREE: int = 32
    MP_DPS: int = 30

    # Полное пространство независимых множеств перечисляется только до этого числа пользователей
    ENUMERATION_LIMIT: int = 24

    # Оракул средних: линейная система первого шага.
    # До ORACLE_EXACT_LIMIT состояний решаем в mpmath, дальше через scipy.sparse.
    ORACLE_STATE_LIMIT: int = 100_000
    ORACLE_EXACT_LIMIT: int = 64

    # Точное TV-расстояние (униформизация)
    TV_STATE_LIMIT: int = 10_000
    UNIFORMIZATION_TOL: float = 1e-10
    TMIX_RTOL: float = 1e-6

    # Сетка для law.csv и интерполяции численно заданных законов
    LAW_GRID_POINTS: int = 401

    # KS против закона с атомом: выборки ниже квантиля, на котором непрерывная часть
    # набирает долю KS_ATOM_MARGIN своей массы, считаются атомом в нуле
    KS_ATOM_MARGIN: float = 0.05

    # Пути
    PRESETS_DIR: str = f"{BASE_DIR}/presets"
    OUTPUT_DIR: str = f"{BASE_DIR}/out"

    @property
    def presets_path(self) -> Path:
        return Path(self.PRESETS_DIR)

    @property
    def output_path(self) -> Path:
        return Path(self.OUTPUT_DIR)

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")


settings = Settings()
