import pytest
from pydantic import ValidationError

from conftest import PRESET_LABELS, preset
from src.config import settings
from src.kpartite.cli import dump_run_config, load_run_config, resolve_path
from src.kpartite.errors import ConfigError
from src.kpartite.model import validate_spec


def test_every_preset_is_listed():
    shipped = {path.stem for path in settings.presets_path.glob("*.md")}
    assert shipped == set(PRESET_LABELS)


@pytest.mark.parametrize("name", sorted(PRESET_LABELS))
def test_preset_is_valid(name):
    cfg = preset(name)
    spec = validate_spec(cfg.to_spec())
    assert spec.K == 3
    assert cfg.source == (1, spec.size(1))
    assert cfg.target == (3, spec.size(3))
    assert cfg.nu == 150
    assert cfg.seed == 0
    assert cfg.description.startswith("# Случай")


@pytest.mark.parametrize("name", ["case1a", "case2bss", "case3"])
def test_dump_and_load_round_trip(tmp_path, name):
    cfg = preset(name)
    path = tmp_path / f"{name}.md"
    path.write_text(dump_run_config(cfg), encoding="utf-8")
    assert load_run_config(path) == cfg


def test_overrides_take_precedence():
    path = settings.presets_path / "case3.md"
    cfg = load_run_config(path, {"nu": 10.0, "seed": None, "replications": 7})
    assert cfg.nu == 10.0
    assert cfg.seed == 0
    assert cfg.replications == 7


def test_override_is_validated():
    with pytest.raises(ValidationError):
        load_run_config(settings.presets_path / "case3.md", {"nu": -1.0})


def test_resolve_path():
    assert resolve_path(None, "case3") == settings.presets_path / "case3.md"
    with pytest.raises(ConfigError):
        resolve_path(None, "case99")
    with pytest.raises(ConfigError):
        resolve_path(None, None)
