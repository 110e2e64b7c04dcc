from fractions import Fraction

import pytest

from src.config import settings
from src.kpartite.cli import load_run_config
from src.kpartite.schema import NetworkSpec

# пресет → (сценарий, общие метки, α) для перехода (1, L_1) → (3, L_3)
PRESET_LABELS = {
    "case1a": ("1a", (), Fraction(0)),
    "case1b": ("1b*", ("1b",), Fraction(0)),
    "case1c": ("1c", (), Fraction(0)),
    "case1d": ("1d", (), Fraction(0)),
    "case2a": ("2a", (), Fraction(2, 5)),
    "case2bs": ("2b*", ("2b",), Fraction(1, 2)),
    "case2bss": ("2b**", ("2b*", "2b"), Fraction(5, 9)),
    "case2bsss": ("2b***", ("2b**", "2b*", "2b"), Fraction(5, 11)),
    "case2c": ("2c", (), Fraction(2, 7)),
    "case2cs": ("2c*", ("2c",), Fraction(1, 2)),
    "case2d": ("2d", (), Fraction(3, 7)),
    "case3": ("3", (), Fraction(1)),
}


def preset(name: str):
    return load_run_config(settings.presets_path / f"{name}.md")


@pytest.fixture
def two_by_two() -> NetworkSpec:
    """K = 2, L = (2, 2), f_k(ν) = ν."""
    return NetworkSpec.power_law([2, 2], [1, 1])


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "OUTPUT_DIR", str(tmp_path))
    return tmp_path
