import math
from fractions import Fraction

import pytest

from src.kpartite.errors import BadEpsilon, EmptySubset, FullSubset, NoEligibleBranch
from src.kpartite.mixing import (
    branch_subset,
    conductance,
    kappa_branch,
    limiting_branch_masses,
    mixing_lower_bound,
    t_mix_exact,
    tv_distance,
)
from src.kpartite.model import star_states
from src.kpartite.schema import NetworkSpec, StarState


def test_branch_conductance(two_by_two):
    report = conductance(two_by_two, 4.0, branch_subset(two_by_two, 1))
    assert report.subset == "B_1"
    assert report.mass == pytest.approx(24 / 49)
    assert report.flow == pytest.approx(8 / 49)
    assert report.conductance == pytest.approx(1 / 3)
    assert report.asymptotic_coefficient == 2
    assert report.asymptotic_exponent == -1


def test_conductance_of_arbitrary_subset(two_by_two):
    report = conductance(two_by_two, 4.0, [StarState.root()])
    # Q({0}, ·) = π_0 (L_1 f + L_2 f) = 16/49
    assert report.conductance == pytest.approx(16.0)
    assert report.asymptotic_coefficient is None


def test_conductance_rejects_degenerate_subsets(two_by_two):
    with pytest.raises(EmptySubset):
        conductance(two_by_two, 4.0, [])
    with pytest.raises(FullSubset):
        conductance(two_by_two, 4.0, star_states(two_by_two))


def test_branch_conductance_large_nu_stays_finite():
    spec = NetworkSpec.power_law([6, 6], [2, 2])
    report = conductance(spec, 1e6, branch_subset(spec, 2))
    # Φ(B_k) ~ L c^{1−L} ν^{−a(L−1)}
    assert report.conductance * 1e60 / 6 == pytest.approx(1.0, rel=1e-3)


def test_branch_conductance_when_mass_rounds_to_one():
    # π_{B_1} = 1 − O(ν^{−4}) округляется до 1
    spec = NetworkSpec.power_law([5, 1], [1, 1])
    report = conductance(spec, 1e5, branch_subset(spec, 1))
    assert report.mass == 1.0
    assert report.log_mass <= 0.0
    assert report.conductance * 1e20 / 5 == pytest.approx(1.0, rel=1e-3)


def test_branch_conductance_when_mass_underflows():
    # π_{B_2} ~ ν^{−4} = 1e−400, меньше наименьшего double
    spec = NetworkSpec.power_law([5, 1], [1, 1])
    report = conductance(spec, 1e100, branch_subset(spec, 2))
    assert report.mass == 0.0
    assert report.log_mass == pytest.approx(-4 * math.log(1e100), rel=1e-9)
    assert report.conductance == pytest.approx(1.0, rel=1e-9)


def test_branch_conductance_three_by_three():
    # Φ(B_1) = 3/(f² + 3f + 3) ~ 3 ν^{−2}
    spec = NetworkSpec.power_law([3, 3], [1, 1])
    assert conductance(spec, 10.0, branch_subset(spec, 1)).conductance == pytest.approx(3 / 133, rel=1e-9)
    report = conductance(spec, 1e4, branch_subset(spec, 1))
    assert (report.asymptotic_coefficient, report.asymptotic_exponent) == (3, -2)
    assert report.conductance * 1e8 / 3 == pytest.approx(1.0, rel=1e-2)


def test_mixing_bound_two_by_two(two_by_two):
    bound = mixing_lower_bound(two_by_two, 4.0, r=0.5, epsilon=0.1)
    assert bound.kappa == 1
    assert bound.conductance == pytest.approx(1 / 3)
    assert bound.bound == pytest.approx(0.9)
    assert bound.asymptotic_bound == pytest.approx(0.6)
    assert bound.label == "branch-certified"
    assert bound.t_mix is None


def test_asymptotic_bound_ratio_tends_to_one(two_by_two):
    bound = mixing_lower_bound(two_by_two, 1e4, r=0.5, epsilon=0.1)
    assert bound.asymptotic_bound / bound.bound == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("nu", [2.0, 4.0, 8.0])
def test_bound_below_exact_mixing_time(two_by_two, nu):
    bound = mixing_lower_bound(two_by_two, nu, r=0.5, epsilon=0.1, exact=True)
    assert bound.t_mix is not None
    assert bound.bound <= bound.t_mix


@pytest.mark.parametrize("nu", [10.0, 50.0])
def test_bound_below_exact_mixing_time_three_by_three(nu):
    spec = NetworkSpec.power_law([3, 3], [1, 1])
    bound = mixing_lower_bound(spec, nu, r=0.5, epsilon=0.1, exact=True)
    assert bound.t_mix is not None
    assert bound.bound <= bound.t_mix


def test_tv_distance_at_zero(two_by_two):
    assert tv_distance(two_by_two, 4.0, 0.0) == pytest.approx(1 - 1 / 49)


def test_tv_distance_decreases(two_by_two):
    values = [tv_distance(two_by_two, 4.0, t) for t in (0.5, 2.0, 8.0, 32.0)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_t_mix_meets_epsilon(two_by_two):
    t = t_mix_exact(two_by_two, 4.0, 0.1)
    assert tv_distance(two_by_two, 4.0, t) <= 0.1
    assert tv_distance(two_by_two, 4.0, 0.99 * t) > 0.1


def test_limiting_masses_and_kappa():
    spec = NetworkSpec.power_law([2, 3, 2], [1, 1, "3/2"])
    # a_k L_k = (2, 3, 3): масса делится между ветвями 2 и 3
    assert limiting_branch_masses(spec) == {1: Fraction(0), 2: Fraction(1, 2), 3: Fraction(1, 2)}
    # a(L−1) = (1, 2, 3/2)
    assert kappa_branch(spec, 0.5) == 2
    assert kappa_branch(spec, 0.25) == 1


def test_kappa_needs_eligible_branch():
    with pytest.raises(NoEligibleBranch):
        kappa_branch(NetworkSpec.power_law([3], [1]), 0.5)


@pytest.mark.parametrize(("r", "epsilon"), [(0.5, 0.25), (0.5, 0.0), (1.0, 0.1)])
def test_bad_epsilon(two_by_two, r, epsilon):
    with pytest.raises(BadEpsilon):
        mixing_lower_bound(two_by_two, 4.0, r=r, epsilon=epsilon)
