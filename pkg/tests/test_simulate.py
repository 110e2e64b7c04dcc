import math

import numpy as np
import pytest
from scipy.stats import expon, ks_2samp

from conftest import PRESET_LABELS, preset
from src.kpartite.asymptotics import atom_floor, classify, law_cdf_array, limit_law
from src.kpartite.bd import exact_mean_hitting_oracle
from src.kpartite.cli.commands import ks_threshold
from src.kpartite.errors import AggregationInvalid, CensoringOverflow, LevelOutOfRange, WrongScenario
from src.kpartite.model import full_chain, tree_mean_hitting
from src.kpartite.schema import Component, FullState, NetworkSpec, PowerLawRate, SimConfig, StarState
from src.kpartite.simulate import (
    branch_occupancy_fractions,
    estimate_near_saturation,
    estimate_starvation,
    geometric_sum_limit_check,
    histogram,
    ks_statistic,
    occupancy_functionals,
    replication_seeds,
    sample_transition,
    star_passage,
    wilson_interval,
)


def sim_config(source, target, nu=10.0, replications=20_000, seed=0, **kwargs):
    return SimConfig(
        nu=nu,
        replications=replications,
        seed=seed,
        source=StarState.at(*source),
        target=StarState.at(*target),
        **kwargs,
    )


# ── Статистика ──────────────────────────────────────────────────────────────

def test_ks_on_constant_samples():
    ks = ks_statistic(np.full(100, 0.7), expon.cdf)
    F = 1 - math.exp(-0.7)
    assert ks == pytest.approx(max(F, 1 - F), abs=1e-12)


def test_ks_handles_atom_at_zero():
    rng = np.random.default_rng(3)
    n = 100_000
    samples = np.where(rng.random(n) < 0.3, 0.0, rng.exponential(1.0, n))

    def cdf(x):
        return np.where(x < 0, 0.0, 0.3 + 0.7 * (1 - np.exp(-x)))

    assert ks_statistic(samples, cdf) < 0.01
    assert ks_statistic(samples, expon.cdf) > 0.25


def test_ks_floor_skips_smeared_atom():
    rng = np.random.default_rng(5)
    n = 100_000
    samples = np.where(rng.random(n) < 0.3, rng.uniform(0.0, 0.02, n), rng.exponential(1.0, n))

    def cdf(x):
        return np.where(x < 0, 0.0, 0.3 + 0.7 * (1 - np.exp(-x)))

    assert ks_statistic(samples, cdf) > 0.25
    assert ks_statistic(samples, cdf, floor=0.1) < 0.01


def test_wilson_interval():
    assert wilson_interval(0, 10)[0] == 0.0
    assert wilson_interval(10, 10)[1] == 1.0
    low, high = wilson_interval(30, 100)
    assert low < 0.3 < high
    assert high - low == pytest.approx(0.18, abs=0.01)


def test_histogram_is_density():
    samples = np.random.default_rng(4).exponential(1.0, 10_000)
    edges, density = histogram(samples)
    assert edges.size == density.size + 1
    assert np.sum(density * np.diff(edges)) == pytest.approx(1.0)


def test_replication_seeds_depend_only_on_index():
    assert np.array_equal(replication_seeds(7, 10), replication_seeds(7, 20)[:10])
    assert not np.array_equal(replication_seeds(7, 10), replication_seeds(8, 10))


def test_replication_seeds_are_distinct():
    seeds = replication_seeds(0, 200_000)
    assert np.unique(seeds).size == seeds.size


# ── Звёздный движок ─────────────────────────────────────────────────────────

def test_star_mean_matches_exact(two_by_two):
    source, target = StarState.at(1, 2), StarState.at(2, 2)
    cfg = sim_config((1, 2), (2, 2), replications=100_000)
    report = sample_transition(two_by_two, cfg)
    times = np.asarray(report.samples)
    exact = tree_mean_hitting(two_by_two, 10.0, source, target)
    assert report.censored == 0
    assert abs(times.mean() - exact) <= 4 * times.std() / math.sqrt(times.size)


def test_star_mean_to_root_and_within_branch():
    spec = NetworkSpec.power_law([3, 2], ["1", "1/2"])
    for source, target in (((1, 3), (0, 0)), ((1, 1), (1, 3)), ((0, 0), (2, 2))):
        report = sample_transition(spec, sim_config(source, target, nu=5.0, replications=50_000))
        times = np.asarray(report.samples)
        exact = tree_mean_hitting(spec, 5.0, StarState.at(*source), StarState.at(*target))
        assert abs(times.mean() - exact) <= 4 * times.std() / math.sqrt(times.size)


def test_star_is_deterministic(two_by_two):
    cfg = sim_config((1, 2), (2, 2), replications=1000, seed=42)
    assert sample_transition(two_by_two, cfg).samples == sample_transition(two_by_two, cfg).samples


def test_same_state_gives_zeros(two_by_two):
    cfg = sim_config((1, 2), (1, 2), replications=10, allow_same=True)
    assert sample_transition(two_by_two, cfg).samples == (0.0,) * 10


def test_occupancy_adds_up(two_by_two):
    report = sample_transition(two_by_two, sim_config((1, 2), (2, 2), replications=2000))
    times = np.asarray(report.samples)
    occupancy = np.asarray(report.occupancy)
    assert occupancy.shape == (2000, 2)
    root = times - occupancy.sum(axis=1)
    assert np.all(root >= -1e-9)
    assert root.mean() > 0


def test_censoring_overflow(two_by_two):
    with pytest.raises(CensoringOverflow):
        sample_transition(two_by_two, sim_config((1, 2), (2, 2), replications=1000, horizon=1e-3))


def test_star_engine_rejects_intra_edges():
    spec = NetworkSpec(components=(
        Component(size=3, rate=PowerLawRate(exponent=1), intra_edges=((0, 1),)),
        Component(size=2, rate=PowerLawRate(exponent=1)),
    ))
    with pytest.raises(AggregationInvalid):
        star_passage(spec, 2.0, StarState.at(1, 1), StarState.at(2, 1), 10, 1e6, 0)


def test_star_replication_does_not_depend_on_batch(two_by_two):
    source, target = StarState.at(1, 2), StarState.at(2, 2)
    short = star_passage(two_by_two, 10.0, source, target, 10, 1e9, 7)
    long = star_passage(two_by_two, 10.0, source, target, 20, 1e9, 7)
    np.testing.assert_array_equal(short[0], long[0][:10])
    np.testing.assert_array_equal(short[1], long[1][:10])


def test_star_independent_of_workers(two_by_two):
    one = sample_transition(two_by_two, sim_config((1, 2), (2, 2), replications=2000, workers=1))
    two = sample_transition(two_by_two, sim_config((1, 2), (2, 2), replications=2000, workers=2))
    assert one.samples == two.samples
    assert one.occupancy == two.occupancy


@pytest.mark.parametrize(("name", "branch"), [("case1b", 2), ("case3", 1)])
def test_occupancy_concentrates_on_dominant_branch(name, branch):
    cfg = preset(name)
    spec = cfg.to_spec()
    report = sample_transition(spec, sim_config(cfg.source, cfg.target, nu=150.0, replications=5000))
    (k1, l1), (k2, l2) = cfg.source, cfg.target
    fractions = branch_occupancy_fractions(report, classify(spec, k1, l1, k2, l2))
    assert set(fractions) == {1, 2}
    assert fractions[branch] >= 0.95


# 1a не проверяется: Z ≡ 0 и не описывает T/E T
@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(set(PRESET_LABELS) - {"case1a"}))
def test_scaled_times_follow_limit_law(name):
    cfg = preset(name)
    spec = cfg.to_spec()
    (k1, l1), (k2, l2) = cfg.source, cfg.target
    report = sample_transition(spec, sim_config(cfg.source, cfg.target, nu=150.0))
    mean = tree_mean_hitting(spec, 150.0, cfg.source_state, StarState.at(k2, l2))
    law = limit_law(classify(spec, k1, l1, k2, l2))
    ks = ks_statistic(np.asarray(report.samples) / mean, lambda xs: law_cdf_array(law, xs), floor=atom_floor(law))
    assert ks <= ks_threshold(law.scenario)


# ── Полное пространство ─────────────────────────────────────────────────────

@pytest.mark.slow
def test_full_space_matches_star(two_by_two):
    cfg = sim_config((1, 2), (2, 2), replications=100_000, seed=1)
    star = sample_transition(two_by_two, cfg, space="star")
    full = sample_transition(two_by_two, cfg.model_copy(update={"seed": 2}), space="full")
    assert ks_2samp(star.samples, full.samples).statistic <= 0.01


@pytest.mark.slow
def test_full_space_independent_of_workers(two_by_two):
    one = sample_transition(two_by_two, sim_config((1, 2), (2, 2), replications=5000, workers=1), space="full")
    two = sample_transition(two_by_two, sim_config((1, 2), (2, 2), replications=5000, workers=2), space="full")
    assert one.samples == two.samples


@pytest.mark.slow
def test_intra_edge_escape_is_exponential():
    component = Component(size=3, rate=PowerLawRate(exponent=1), intra_edges=((0, 1),))
    spec = NetworkSpec(components=(component,))
    source, target = FullState(mask=0b101), FullState(mask=0)
    cfg = SimConfig(nu=1e4, replications=20_000, seed=0, source=source, target=target)
    report = sample_transition(spec, cfg, space="full")
    mean = exact_mean_hitting_oracle(full_chain(spec, 1e4), source, [target])
    assert ks_statistic(np.asarray(report.samples) / mean, expon.cdf) <= 0.03


# ── Занятость и насыщение ───────────────────────────────────────────────────

def test_occupancy_triples_are_ordered():
    spec = NetworkSpec.power_law([3, 2], [1, 1])
    report = occupancy_functionals(spec, 5.0, StarState.at(1, 3), 10.0, 500, seed=0, keep_triples=True)
    assert len(report.triples) == 500
    for triple in report.triples:
        assert triple.tau_res <= min(triple.tau, triple.R) + 1e-9
        assert triple.R <= 10.0
    assert report.mean_tau_res_total <= report.mean_escape


def test_occupancy_needs_branch_start(two_by_two):
    with pytest.raises(LevelOutOfRange):
        occupancy_functionals(two_by_two, 5.0, StarState.root(), 10.0, 10, seed=0)


@pytest.mark.slow
def test_near_saturation_single_component():
    spec = NetworkSpec.power_law([3], [1])
    source = StarState.at(1, 3)
    probability = estimate_near_saturation(spec, 100.0, source, omega=0.5, delta=0.1, replications=2000, seed=0)
    assert probability >= math.exp(-0.5) - 0.05

    report = occupancy_functionals(spec, 100.0, source, 0.0, 2000, seed=1)
    assert report.mean_tau_res_total / report.mean_escape >= 0.95


# ── Голодание ───────────────────────────────────────────────────────────────

def test_starvation_at_zero_is_certain():
    cfg = preset("case3")
    estimate = estimate_starvation(cfg.to_spec(), 150.0, 3, 0.0, 100, 0, cfg.source_state)
    assert estimate.probability == 1.0


@pytest.mark.parametrize("omega", [0.25, 0.5, 1.0, 2.0])
def test_starvation_bounded_by_limit_law(omega):
    cfg = preset("case3")
    spec = cfg.to_spec()
    mean = tree_mean_hitting(spec, 150.0, cfg.source_state, StarState.at(3, 1))
    estimate = estimate_starvation(spec, 150.0, 3, omega * mean, 5000, 0, cfg.source_state)
    assert estimate.probability >= math.exp(-omega) - 0.05
    assert estimate.ci_low <= estimate.probability <= estimate.ci_high


def test_starvation_vanishes_far_out():
    cfg = preset("case3")
    spec = cfg.to_spec()
    mean = tree_mean_hitting(spec, 150.0, cfg.source_state, StarState.at(3, 1))
    assert estimate_starvation(spec, 150.0, 3, 50 * mean, 2000, 0, cfg.source_state).probability <= 0.01


def test_starvation_source_outside_target_branch():
    cfg = preset("case3")
    with pytest.raises(LevelOutOfRange):
        estimate_starvation(cfg.to_spec(), 150.0, 1, 1.0, 10, 0, cfg.source_state)


# ── Геометрическая сумма ────────────────────────────────────────────────────

def test_geometric_sum_converges_to_exponential():
    cfg = preset("case2c")
    spec = cfg.to_spec()
    (k1, l1), (k2, l2) = cfg.source, cfg.target
    classification = classify(spec, k1, l1, k2, l2)
    check = geometric_sum_limit_check([10.0, 1e4], spec, classification, k=2, seed=0)
    assert check.ks[1] <= 0.03
    assert check.ks[0] > check.ks[1]
    assert check.mean_visits[1] > check.mean_visits[0]
    assert check.monotone
    assert check.variance_ratio[0] < check.variance_ratio[1]
    assert check.variance_ratio[1] == pytest.approx(1.0, abs=1e-3)


def test_geometric_sum_requires_strong_branch():
    cfg = preset("case2c")
    spec = cfg.to_spec()
    classification = classify(spec, 1, 5, 3, 2)
    with pytest.raises(WrongScenario):
        geometric_sum_limit_check([10.0], spec, classification, k=1, seed=0)
