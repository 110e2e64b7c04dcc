"""Загрузка конфигурации прогона: markdown с YAML-фронтматтером."""

from pathlib import Path
from typing import Any

import frontmatter as fm

from src.config import settings
from src.logger import logger

from ..errors import ConfigError
from ..schema import RunConfig


def resolve_path(config: str | None, preset: str | None) -> Path:
    if preset:
        path = settings.presets_path / f"{preset}.md"
    elif config:
        path = Path(config)
    else:
        raise ConfigError("нужен --config PATH или --preset NAME")
    if not path.is_file():
        raise ConfigError(f"файл конфигурации не найден: {path}")
    return path


def load_run_config(path: Path, overrides: dict[str, Any] | None = None) -> RunConfig:
    """Фронтматтер — параметры, тело документа — описание для эха.

    Флаги командной строки перекрывают значения из файла; итог валидируется целиком.
    """
    post = fm.load(path)
    data = dict(post.metadata)
    if post.content.strip():
        data["description"] = post.content.strip()
    data.update({key: value for key, value in (overrides or {}).items() if value is not None})
    cfg = RunConfig.model_validate(data)
    logger.debug("Конфигурация {}: {} компонент, ν={:g}, seed={}", path.name, len(cfg.components), cfg.nu, cfg.seed)
    return cfg


def dump_run_config(cfg: RunConfig) -> str:
    """Обратная операция: тот же формат, из которого load_run_config восстановит cfg."""
    payload = cfg.model_dump(mode="json", exclude={"description"})
    post = fm.Post(cfg.description, **payload)
    return fm.dumps(post)
