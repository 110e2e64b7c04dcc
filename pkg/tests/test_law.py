import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import simpson

from conftest import PRESET_LABELS, preset
from src.kpartite.asymptotics import (
    atom_floor,
    classify,
    laplace,
    law_cdf,
    law_cdf_array,
    law_pdf,
    law_quantile,
    limit_law,
    marked_poisson_check,
    w_law,
)
from src.kpartite.errors import WrongScenario


def preset_law(name):
    cfg = preset(name)
    (k1, l1), (k2, l2) = cfg.source, cfg.target
    return limit_law(classify(cfg.to_spec(), k1, l1, k2, l2))


CLOSED_PRESETS = ["case1b", "case1c", "case2a", "case2bs", "case2bss", "case2bsss", "case2c", "case2cs", "case3"]
NUMERICAL_PRESETS = ["case1d", "case2d"]


def test_scenario3_is_standard_exponential():
    law = preset_law("case3")
    assert law_cdf(law, 1.0) == pytest.approx(1 - math.exp(-1), abs=1e-12)
    assert law_quantile(law, 0.5) == pytest.approx(math.log(2), abs=1e-8)


def test_geometric_sum_with_atom():
    # 1b*: β = 1, λ = β/γ = 1
    law = preset_law("case1b")
    assert law.atom == pytest.approx(0.5)
    for x in (0.0, 0.3, 1.0, 4.0):
        assert law_cdf(law, x) == pytest.approx(1 - 0.5 * math.exp(-x / 2), abs=1e-12)


def test_atom_only_for_case1a():
    law = preset_law("case1a")
    assert law.atom == 1.0
    assert law.mean == 0.0
    assert law_cdf(law, 0.0) == 1.0
    assert law_pdf(law, 0.5) == 0.0


def test_atom_floor():
    # 1b*: F(x) = 1 − e^{−x/2}/2, порог равен квантилю уровня 0.5 + 0.05·0.5
    assert atom_floor(preset_law("case1b")) == pytest.approx(2 * math.log(1 / 0.95), abs=1e-8)
    assert atom_floor(preset_law("case1b"), margin=0.0) == 0.0
    assert atom_floor(preset_law("case1a")) == 0.0
    assert atom_floor(preset_law("case3")) == 0.0


@pytest.mark.parametrize("name", CLOSED_PRESETS)
def test_closed_forms_match_inversion(name):
    law = preset_law(name)
    for x in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
        assert law_cdf(law, x, numerical=True) == pytest.approx(law_cdf(law, x), abs=1e-6)
        assert law_pdf(law, x, numerical=True) == pytest.approx(law_pdf(law, x), abs=1e-6)


@pytest.mark.parametrize("name", sorted(PRESET_LABELS))
def test_laplace_derivative_gives_mean(name):
    law = preset_law(name)
    with mpmath.workdps(30):
        derivative = mpmath.diff(lambda s: laplace(law, s), 0)
    assert -float(derivative) == pytest.approx(law.mean, abs=1e-6)


@pytest.mark.parametrize("name", sorted(PRESET_LABELS))
def test_cdf_at_zero_is_atom(name):
    law = preset_law(name)
    assert law_cdf(law, 0.0) == pytest.approx(law.atom, abs=1e-9)
    assert law_cdf(law, -1.0) == 0.0


@pytest.mark.parametrize("name", NUMERICAL_PRESETS)
def test_numerical_cdf_is_monotone(name):
    law = preset_law(name)
    values = law_cdf_array(law, np.linspace(0.0, 10.0, 200))
    assert np.all(np.diff(values) >= -1e-12)
    assert 0.0 <= values[0] and values[-1] <= 1.0


@pytest.mark.slow
@pytest.mark.parametrize("name", NUMERICAL_PRESETS)
def test_density_integrates_to_continuous_mass(name):
    law = preset_law(name)
    x_max = law_quantile(law, 1 - 1e-6)
    grid = np.linspace(0.0, x_max, 401)
    density = np.array([law_pdf(law, float(x)) for x in grid])
    assert simpson(density, x=grid) == pytest.approx(1 - law.atom, abs=1e-4)


@pytest.mark.slow
def test_marked_poisson_representation():
    assert marked_poisson_check(preset_law("case1d"), 100_000, seed=0) <= 0.015


def test_marked_poisson_needs_attracting_and_strong():
    with pytest.raises(WrongScenario):
        w_law(preset_law("case1c"))
