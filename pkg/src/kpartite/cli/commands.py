"""Команды CLI. Каждая возвращает (outputs, warnings) и пишет свои CSV в out_dir."""

from pathlib import Path
from typing import Any

import numpy as np

from src.config import settings

from ..asymptotics import asym_mean_transition, atom_floor, classify, law_cdf, law_cdf_array, law_pdf, law_quantile, limit_law
from ..bd.oracle import exact_mean_hitting_oracle
from ..errors import ConfigError, TooLarge
from ..mixing import mixing_lower_bound
from ..model import full_chain, star_chain, tree_mean_hitting
from ..schema import RunConfig, SimConfig, StarState
from ..simulate import (
    branch_occupancy_fractions,
    estimate_starvation,
    histogram,
    ks_statistic,
    sample_transition,
)
from .output import write_csv

Outputs = tuple[dict[str, Any], list[str]]

# сценарии с порогом KS 0.05, у остальных порог 0.10
EXPONENTIAL_ROWS = frozenset({"3", "2b***", "2c*"})


def ks_threshold(scenario: str) -> float:
    return 0.05 if scenario in EXPONENTIAL_ROWS else 0.10


def _classification(cfg: RunConfig):
    (k1, l1), (k2, l2) = cfg.source, cfg.target
    return classify(cfg.to_spec(), k1, l1, k2, l2)


def exact_mean(cfg: RunConfig, source: StarState | None = None, target: StarState | None = None) -> float:
    """Точное среднее: по пути в дереве на звезде, линейной системой на полном пространстве."""
    spec = cfg.to_spec()
    source = source or cfg.source_state
    target = target or cfg.target_state
    if cfg.space == "star" and spec.aggregable:
        return tree_mean_hitting(spec, cfg.nu, source, target)
    return exact_mean_hitting_oracle(full_chain(spec, cfg.nu), source, [target])


# ── classify ────────────────────────────────────────────────────────────────

def cmd_classify(cfg: RunConfig, out_dir: Path) -> Outputs:
    classification = _classification(cfg)
    asymptotic = asym_mean_transition(classification, cfg.to_spec())
    outputs = classification.model_dump(mode="json")
    outputs["asymptotic_mean"] = asymptotic.model_dump(mode="json")

    gamma = {k: str(v) for k, v in classification.gamma.items()}
    beta = {k: ("∞" if v is None else str(v)) for k, v in classification.beta.items()}
    print(
        f"{'*' * 50}\nСценарий: {classification.scenario}"
        + (f" (также {', '.join(classification.aliases)})" if classification.aliases else "")
        + f"\nγ = {gamma}"
        + f"\nβ = {beta}\nα = {classification.alpha}"
        + f"\nN = {classification.partition_N}, A = {classification.partition_A}, S = {classification.partition_S}"
        + f"\nE T ~ {asymptotic.coefficient} · ν^{asymptotic.exponent}"
    )
    return outputs, []


# ── mean ────────────────────────────────────────────────────────────────────

def cmd_mean(cfg: RunConfig, out_dir: Path) -> Outputs:
    spec = cfg.to_spec()
    warnings: list[str] = []
    outputs: dict[str, Any] = {"nu": cfg.nu, "exact": exact_mean(cfg)}

    chain = star_chain(spec, cfg.nu) if cfg.space == "star" and spec.aggregable else full_chain(spec, cfg.nu)
    try:
        outputs["oracle"] = exact_mean_hitting_oracle(chain, cfg.source_state, [cfg.target_state])
    except TooLarge as exc:
        warnings.append(f"оракул пропущен: {exc}")

    try:
        asymptotic = asym_mean_transition(_classification(cfg), spec)
        outputs["asymptotic_mean"] = asymptotic.model_dump(mode="json")
        outputs["ratio"] = outputs["exact"] / asymptotic(cfg.nu)
    except ConfigError as exc:
        warnings.append(f"асимптотика недоступна: {exc}")

    print(f"{'*' * 50}\nE T = {outputs['exact']:.10g}" + (f", отношение к асимптотике {outputs['ratio']:.6f}" if "ratio" in outputs else ""))
    return outputs, warnings


# ── law ─────────────────────────────────────────────────────────────────────

def law_grid(law) -> np.ndarray:
    x_max = 1.0 if law.scenario == "1a" else law_quantile(law, 0.999)
    return np.linspace(0.0, x_max, settings.LAW_GRID_POINTS)


def cmd_law(cfg: RunConfig, out_dir: Path) -> Outputs:
    law = limit_law(_classification(cfg))
    grid = law_grid(law)
    rows = [(float(x), law_pdf(law, float(x)), law_cdf(law, float(x))) for x in grid]
    write_csv(out_dir / "law.csv", ("x", "pdf", "cdf"), rows)

    print(f"{'*' * 50}\nЗакон {law.scenario}: атом {law.atom:.6g}, среднее {law.mean:.6g}, {len(rows)} точек")
    return {"scenario": law.scenario, "alpha": law.alpha, "atom": law.atom, "mean": law.mean, "points": len(rows)}, []


# ── simulate ────────────────────────────────────────────────────────────────

def _sim_config(cfg: RunConfig, target: StarState | None = None) -> SimConfig:
    return SimConfig(
        nu=cfg.nu,
        replications=cfg.replications,
        seed=cfg.seed,
        source=cfg.source_state,
        target=target or cfg.target_state,
        horizon=cfg.horizon,
        workers=cfg.workers,
    )


def cmd_simulate(cfg: RunConfig, out_dir: Path) -> Outputs:
    spec = cfg.to_spec()
    warnings: list[str] = []
    report = sample_transition(spec, _sim_config(cfg), space=cfg.space)

    times = np.asarray(report.samples)
    mean = exact_mean(cfg)
    scaled = times / mean
    write_csv(out_dir / "samples.csv", ("time", "scaled"), zip(times.tolist(), scaled.tolist()))

    edges, density = histogram(scaled)
    write_csv(
        out_dir / "histogram.csv",
        ("left", "right", "density"),
        zip(edges[:-1].tolist(), edges[1:].tolist(), density.tolist()),
    )

    outputs: dict[str, Any] = {
        "space": cfg.space,
        "replications": report.replications,
        "censored": report.censored,
        "horizon": report.horizon,
        "exact_mean": mean,
        "sample_mean": float(times.mean()),
        "scaled_mean": float(scaled.mean()),
    }

    try:
        classification = _classification(cfg)
    except ConfigError as exc:
        warnings.append(f"закон не определён, KS не считается: {exc}")
        classification = None

    if classification is not None:
        law = limit_law(classification)
        floor = atom_floor(law)
        ks = ks_statistic(scaled, lambda xs: law_cdf_array(law, xs), floor=floor)
        threshold = ks_threshold(law.scenario)
        outputs.update(
            scenario=law.scenario,
            ks=ks,
            ks_floor=floor,
            ks_threshold=threshold,
            occupancy_fractions={str(k): v for k, v in branch_occupancy_fractions(report, classification).items()},
        )
        if law.scenario == "1a":
            warnings.append("сценарий 1a: предельный закон — атом в нуле, при конечном ν KS не показателен")
        elif ks > threshold:
            warnings.append(f"KS={ks:.4f} выше порога {threshold}")
        print(f"{'*' * 50}\nKS против закона {law.scenario}: {ks:.5f}")

    print(f"{'*' * 50}\nРепликаций: {report.replications}, среднее/точное: {outputs['sample_mean'] / mean:.5f}")
    return outputs, warnings


# ── starve ──────────────────────────────────────────────────────────────────

def cmd_starve(cfg: RunConfig, out_dir: Path) -> Outputs:
    spec = cfg.to_spec()
    warnings: list[str] = []
    (k1, l1), (k2, _) = cfg.source, cfg.target
    entry = StarState.at(k2, 1)

    law = limit_law(classify(spec, k1, l1, k2, 1))
    mean = tree_mean_hitting(spec, cfg.nu, cfg.source_state, entry)
    horizon = settings.HORIZON_FACTOR * mean

    rows = []
    for omega in cfg.omega:
        t = omega * mean
        estimate = estimate_starvation(spec, cfg.nu, k2, t, cfg.replications, cfg.seed, cfg.source_state)
        # P(Z ≥ ω); Z непрерывна при ω > 0
        limit = 1.0 if omega == 0 else 1.0 - law_cdf(law, omega)
        beyond = t > horizon
        if beyond:
            warnings.append(f"ω={omega}: t={t:.4g} за горизонтом {horizon:.4g}")
        rows.append((omega, t, estimate.probability, limit, estimate.ci_low, estimate.ci_high, beyond))
        print(f"{'*' * 50}\nω={omega}: P(τ=0)={estimate.probability:.4f}, P(Z≥ω)={limit:.4f}")

    write_csv(out_dir / "table.csv", ("omega", "t", "probability", "limit_bound", "ci_low", "ci_high", "beyond_horizon"), rows)
    return {"scenario": law.scenario, "mean": mean, "rows": len(rows)}, warnings


# ── mix ─────────────────────────────────────────────────────────────────────

def cmd_mix(cfg: RunConfig, out_dir: Path) -> Outputs:
    spec = cfg.to_spec()
    warnings: list[str] = []
    rows = []
    kappa = None
    for nu in cfg.nu_grid or [cfg.nu]:
        bound = mixing_lower_bound(spec, nu, cfg.r, cfg.epsilon, exact=cfg.exact_tmix)
        kappa = bound.kappa
        ratio = bound.asymptotic_bound / bound.bound
        rows.append((nu, bound.conductance, bound.bound, bound.asymptotic_bound, ratio, bound.t_mix))
        if bound.t_mix is not None and bound.bound > bound.t_mix:
            warnings.append(f"ν={nu}: оценка {bound.bound:.6g} > t_mix {bound.t_mix:.6g}")
        print(f"{'*' * 50}\nν={nu:g}: Φ(B_{kappa})={bound.conductance:.6g}, оценка={bound.bound:.6g}")

    write_csv(out_dir / "table.csv", ("nu", "conductance", "bound", "asymptotic_bound", "ratio", "t_mix"), rows)
    return {"kappa": kappa, "r": cfg.r, "epsilon": cfg.epsilon, "label": "branch-certified", "rows": len(rows)}, warnings


COMMANDS = {
    "classify": cmd_classify,
    "mean": cmd_mean,
    "law": cmd_law,
    "simulate": cmd_simulate,
    "starve": cmd_starve,
    "mix": cmd_mix,
}
